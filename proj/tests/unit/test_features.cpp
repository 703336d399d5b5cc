#include <catch_amalgamated.hpp>

#include <cmath>

#include "cavqed/features.hpp"

using namespace cavqed;
using Catch::Approx;

namespace {

Spectrum curve(double lo, double hi, std::size_t n, auto&& f) {
  Spectrum s;
  s.omega = uniform_grid(lo, hi, n);
  for (double w : s.omega) s.intensity.push_back(f(w));
  return s;
}

}  // namespace

TEST_CASE("two Lorentzians") {
  const auto s = curve(0.9, 1.1, 4001, [](double w) {
    return lorentzian(w - 0.98, 0.004) + 0.6 * lorentzian(w - 1.02, 0.004);
  });
  const auto p = find_peaks(s);
  REQUIRE(p.size() == 2);
  CHECK(p[0].omega == Approx(0.98).margin(1e-4));
  CHECK(p[1].omega == Approx(1.02).margin(1e-4));
  CHECK(*main_splitting(p) == Approx(0.04).margin(2e-4));
  // well separated, so the width is close to gamma
  CHECK(*fwhm(s, p[0]) == Approx(0.004).epsilon(0.02));
}

TEST_CASE("small bumps are filtered by prominence") {
  const auto s = curve(0.0, 1.0, 2001, [](double w) {
    return std::exp(-50 * (w - 0.5) * (w - 0.5)) + 0.001 * std::sin(200 * w);
  });
  CHECK(find_peaks(s).size() == 1);
  CHECK(find_peaks(s, 0.0).size() > 1);
}

TEST_CASE("fwhm needs both crossings") {
  const auto s = curve(0.0, 1.0, 101, [](double w) { return w; });
  Peak p{100, 1.0, 1.0, 1.0};
  CHECK_FALSE(fwhm(s, p));
}

TEST_CASE("dip depth") {
  // broad peak with a narrow notch of depth 0.3 at 1.0
  const auto s = curve(0.9, 1.1, 2001, [](double w) {
    return 1.0 - 0.3 * std::exp(-std::pow((w - 1.0) / 0.0005, 2)) - 2 * (w - 1.0) * (w - 1.0);
  });
  CHECK(dip_depth(s, 1.0) == Approx(0.3).epsilon(0.01));
  CHECK(dip_depth(s, 1.05) == 0.0);
  const auto flat = curve(0.9, 1.1, 101, [](double) { return 1.0; });
  CHECK(dip_depth(flat, 1.0) == 0.0);
}

TEST_CASE("single peak has no splitting") {
  CHECK_FALSE(main_splitting({Peak{0, 1.0, 1.0, 1.0}}));
}

TEST_CASE("peak weights split at the minimum between peaks") {
  const auto s = curve(0.9, 1.1, 2001, [](double w) {
    return lorentzian(w - 0.95, 0.01) + lorentzian(w - 1.05, 0.01);
  });
  PolaritonModes m;
  m.eigenvalues = Eigen::Vector3d(0.95, 1.0001, 1.05);
  m.el_weight = Eigen::Vector3d(0.2, 0.5, 0.3);
  const auto w = peak_weights(s, find_peaks(s), m);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == Approx(0.2));
  CHECK(w[1] == Approx(0.8));
}
