#include <catch_amalgamated.hpp>

#include <cmath>

#include "cavqed/mapping.hpp"

using namespace cavqed;
using Catch::Approx;

namespace {

CavityModel toluene_cavity() {
  CavityModel c;
  c.omega_c = 6.64;
  c.lambda_c = {0.43, 0.0, 0.0};
  c.kappa = 0.01;
  c.omega_min = 6.35;
  c.omega_max = 6.95;
  c.spacing = 1e-4;
  return c;
}

double total_strength(const PhotonGrid& g) {
  double s = 0.0;
  for (const auto& m : g.modes) s += dot(m.lambda, m.lambda);
  return s;
}

}  // namespace

TEST_CASE("mappings invert") {
  const LinearMapping lin(2.0, 0.5);
  const ArctanStretch at(6.64, 0.05);
  const TabulatedMapping tab({{0.0, 6.0}, {1.0, 6.5}, {3.0, 7.0}});
  for (double w : {6.1, 6.4, 6.64, 6.9}) {
    CHECK(lin.omega(lin.inverse(w)) == Approx(w).epsilon(1e-14));
    CHECK(at.omega(at.inverse(w)) == Approx(w).epsilon(1e-14));
    CHECK(tab.omega(tab.inverse(w)) == Approx(w).epsilon(1e-14));
  }
  // d/dx (c + w tan x) = w / cos^2 x
  CHECK(at.density(0.3) == Approx(0.05 / std::pow(std::cos(0.3), 2)));
  CHECK(tab.density(2.0) == Approx(0.25));
}

TEST_CASE("identity transform at the source spacing reproduces the grid") {
  const auto g = build_photon_grid(toluene_cavity());
  const auto t = transform_grid(g, IdentityMapping{}, toluene_cavity().spacing);
  REQUIRE(t.size() == g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(t[k].omega == Approx(g[k].omega).epsilon(1e-13));
    CHECK(t[k].lambda[0] == Approx(g[k].lambda[0]).epsilon(1e-9));
  }
  CHECK(t.provenance == "transformed(identity)");
}

TEST_CASE("arctan stretch keeps the coupling strength with 10x fewer modes") {
  const auto cav = toluene_cavity();
  const auto g = build_photon_grid(cav);
  const ArctanStretch at(cav.omega_c, 0.05);
  const std::size_t target = (g.size() - 1) / 10 + 1;
  const auto t = transform_grid(g, at, spacing_for_mode_count(g, at, target));
  CHECK(t.size() == target);
  CHECK(total_strength(t) == Approx(total_strength(g)).epsilon(2e-3));
  // Modes crowd around omega_c.
  CHECK(t[target / 2 + 1].omega - t[target / 2].omega < t[1].omega - t[0].omega);
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k].omega > t[k - 1].omega);
}

TEST_CASE("mapping that does not cover the source span is rejected") {
  const auto g = build_photon_grid(toluene_cavity());
  // image stops short of the upper end of the grid
  const TabulatedMapping short_table({{0.0, 6.0}, {1.0, 6.9}});
  CHECK_THROWS_AS(transform_grid(g, short_table, 1e-3), ValidationError);
}
