#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cavqed/observables.hpp"
#include "support.hpp"

using namespace cavqed;
using Catch::Approx;

namespace {

ElectronicLevels levels_for(const CoupledSystem& sys) {
  ElectronicLevels lv;
  for (Eigen::Index i = 0; i < sys.el_count(); ++i)
    lv.levels.push_back({sys.labels()[static_cast<std::size_t>(i)], sys.el_energies()[i], {0.3 + 0.2 * i, 0.0, 0.0}});
  return lv;
}

}  // namespace

TEST_CASE("lorentzian has unit area and FWHM gamma") {
  const double g = 0.002;
  CHECK(lorentzian(0.5 * g, g) == Approx(0.5 * lorentzian(0.0, g)));
  // integral over [-a, a] is (2/pi) atan(2a/g)
  double s = 0.0;
  const double h = 1e-6, a = 0.1;
  for (double x = -a + 0.5 * h; x < a; x += h) s += lorentzian(x, g) * h;
  CHECK(s == Approx(2.0 / std::numbers::pi * std::atan(2 * a / g)).epsilon(1e-8));
}

TEST_CASE("uniform grid endpoints") {
  const auto g = uniform_grid(6.3, 7.0, 3000);
  CHECK(g.size() == 3000);
  CHECK(g.front() == 6.3);
  CHECK(g.back() == 7.0);
  CHECK_THROWS_AS(uniform_grid(1.0, 0.5, 10), ValidationError);
}

TEST_CASE("an uncoupled level gives a Lorentzian at its energy") {
  const double e = 6.93, gamma = 0.001;
  CoupledSystem sys(Eigen::VectorXd::Constant(1, e), Eigen::VectorXd::LinSpaced(11, 6.9, 6.95),
                    Eigen::MatrixXd::Zero(1, 11));
  ElectronicLevels lv{{{"e1", e, {0.96, 0.0, 0.0}}}};
  const auto modes = eigensolve_structured(sys);
  const auto omega = uniform_grid(6.92, 6.94, 401);
  const auto s = absorption_spectrum(modes, lv, gamma, omega, {1, 0, 0});
  for (std::size_t i = 0; i < omega.size(); ++i)
    CHECK(s.intensity[i] == Approx(lorentzian(omega[i] - e, gamma) / lorentzian(0.0, gamma)).margin(1e-14));
  CHECK(s.scale_factor == Approx(lorentzian(0.0, gamma) * e * 0.96 * 0.96).epsilon(1e-13));
  CHECK(s.mode == PrefactorMode::normalized);
}

TEST_CASE("resolvent and eigen spectra agree") {
  for (unsigned seed : {4u, 7u, 9u}) {
    const auto sys = testsupport::random_system(seed, 1 + seed % 4, 300);
    const auto lv = levels_for(sys);
    const auto omega = uniform_grid(sys.ph_energies()[0], sys.ph_energies()[299], 800);
    const auto a = absorption_spectrum(eigensolve_structured(sys), lv, 0.002, omega, {1, 0, 0});
    const auto b = resolvent_spectrum(sys, lv, 0.002, omega, {1, 0, 0});
    double dev = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) dev = std::max(dev, std::abs(a.intensity[i] - b.intensity[i]));
    CHECK(dev < 2e-3);  // omega prefactor at the probe, not the eigenvalue
    CHECK(b.scale_factor == Approx(a.scale_factor).epsilon(2e-3));
  }
}

TEST_CASE("weight spectra use the squared components") {
  const auto sys = testsupport::random_system(8, 2, 120);
  const auto lv = levels_for(sys);
  const auto modes = eigensolve_structured(sys);
  const auto omega = uniform_grid(sys.ph_energies()[0], sys.ph_energies()[119], 200);
  const auto s = weight_spectrum(modes, lv, 1, 0.003, omega);
  const double x = omega[77];
  double raw = 0.0;
  for (Eigen::Index l = 0; l < modes.size(); ++l)
    raw += lorentzian(x - modes.eigenvalues[l], 0.003) * std::pow(modes.el_components(l, 1), 2);
  CHECK(s.intensity[77] * s.scale_factor == Approx(raw).epsilon(1e-12));
  CHECK(s.state == "e2");
}

TEST_CASE("normalize puts the peak at one") {
  Spectrum s;
  s.omega = {1, 2, 3};
  s.intensity = {0.5, 4.0, 1.0};
  s.scale_factor = 2.0;
  const auto n = normalize(s);
  CHECK(n.intensity[1] == 1.0);
  CHECK(n.scale_factor == 8.0);
  s.intensity = {0, 0, 0};
  CHECK_THROWS_AS(normalize(s), SolverError);
}

TEST_CASE("request validation") {
  const auto sys = testsupport::random_system(1, 1, 20);
  const auto lv = levels_for(sys);
  const auto modes = eigensolve_structured(sys);
  const std::vector<double> omega{1.0, 1.01};
  CHECK_THROWS_AS(absorption_spectrum(modes, lv, 0.0, omega, {1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(absorption_spectrum(modes, lv, 0.001, omega, {1, 1, 0}), ValidationError);
  CHECK_THROWS_AS(absorption_spectrum(modes, lv, 0.001, {}, {1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(resolvent_spectrum(sys, lv, -1.0, omega, {1, 0, 0}), ValidationError);
}

TEST_CASE("spectrum csv layout") {
  Spectrum s;
  s.omega = {6.9, 6.91};
  s.intensity = {1.0, -0.0};
  s.gamma = 0.001;
  std::ostringstream os;
  write_spectrum_csv(s, os, {{"id", "x"}});
  CHECK(os.str() ==
        "# id: x\n# channel: absorption\n# gamma_eV: 1.00000000e-03\n# scale_factor: 1.00000000e+00\n"
        "omega_eV,intensity_norm,scale_factor\n"
        "6.90000000e+00,1.00000000e+00,1.00000000e+00\n"
        "6.91000000e+00,0.00000000e+00,1.00000000e+00\n");
}
