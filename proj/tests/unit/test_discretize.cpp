#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "cavqed/discretize.hpp"

using namespace cavqed;
using Catch::Approx;

namespace {

CavityModel symmetric(double kappa, double half_width, double spacing) {
  CavityModel c;
  c.omega_c = 6.64;
  c.lambda_c = {0.43, 0.0, 0.0};
  c.kappa = kappa;
  c.omega_min = c.omega_c - half_width;
  c.omega_max = c.omega_c + half_width;
  c.spacing = spacing;
  return c;
}

}  // namespace

TEST_CASE("lorentzian filter value") {
  // dw/(2 pi) * kappa / (x^2 + kappa^2/4), x = kappa/2
  CHECK(lorentzian_weight(1e-4, 1e-3, 5e-4) == Approx(0.03183098861837907).epsilon(1e-14));
  CHECK_THROWS_AS(lorentzian_weight(0.0, 1e-3, 0.0), ValidationError);
}

TEST_CASE("coverage matches the closed form on symmetric windows") {
  // (2/pi) atan(2W/kappa), frozen
  struct Case {
    double kappa, w, dw, expect;
  } cases[] = {
      {1e-3, 0.25, 1e-4, 0.9987267621529134},
      {1e-2, 0.5, 1e-3, 0.9936340144701836},
      {0.32, 1.0, 5e-4, 0.8989969231019743},
  };
  for (const auto& cs : cases) {
    const auto cav = symmetric(cs.kappa, cs.w, cs.dw);
    const auto grid = build_photon_grid(cav);
    const auto cov = check_sum_rule(grid, cav);
    REQUIRE(cov);
    CHECK(std::abs(*cov - cs.expect) < 1e-4);
  }
}

TEST_CASE("grid is mirror symmetric about omega_c") {
  const auto cav = symmetric(0.01, 0.3, 1e-3);
  const auto g = build_photon_grid(cav);
  REQUIRE(g.size() == 601);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto& a = g[k];
    const auto& b = g[g.size() - 1 - k];
    CHECK(a.omega - cav.omega_c == Approx(cav.omega_c - b.omega).margin(1e-12));
    CHECK(a.lambda[0] == b.lambda[0]);
  }
}

TEST_CASE("mode counts of the preset windows") {
  CavityModel c = symmetric(0.01, 0.3, 1e-3);
  c.omega_min = 6.35;
  c.omega_max = 6.95;
  CHECK(build_photon_grid(c).size() == 601);
  c.omega_min = 4.85;
  c.omega_max = 8.45;
  c.spacing = 1e-4;
  CHECK(c.mode_count() == 36001);
}

TEST_CASE("lambda_k is parallel to lambda_c") {
  auto cav = symmetric(0.01, 0.1, 1e-3);
  cav.lambda_c = {0.3, 0.4, 0.0};
  for (const auto& m : build_photon_grid(cav).modes) CHECK(m.lambda[1] / m.lambda[0] == Approx(4.0 / 3.0));
}

TEST_CASE("zero cavity strength has no coverage") {
  auto cav = symmetric(0.01, 0.1, 1e-3);
  cav.lambda_c = {};
  CHECK_FALSE(check_sum_rule(build_photon_grid(cav), cav));
}

TEST_CASE("grid csv round trip is bit exact") {
  const auto g = build_photon_grid(symmetric(0.01, 0.05, 1e-3));
  std::stringstream ss;
  write_grid_csv(g, ss);
  const auto back = read_grid_csv(ss);
  REQUIRE(back.size() == g.size());
  for (std::size_t k = 0; k < g.size(); ++k) CHECK(back[k] == g[k]);
}

TEST_CASE("invalid cavity is rejected") {
  auto cav = symmetric(0.01, 0.1, 2e-3);
  CHECK_THROWS_AS(build_photon_grid(cav), ValidationError);
}
