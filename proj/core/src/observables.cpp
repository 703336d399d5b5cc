#include "cavqed/observables.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>

#include "cavqed/error.hpp"
#include "cavqed/format.hpp"
#include "cavqed/parallel.hpp"

namespace cavqed {
namespace {

using Eigen::Index;

void check_request(double gamma, const std::vector<double>& omega, const char* what) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ValidationError("run.gamma", std::string(what) + ": broadening must be positive");
  if (omega.empty()) throw ValidationError("run.spectrum_points", std::string(what) + ": empty frequency grid");
  for (double w : omega)
    if (!(w > 0.0) || !std::isfinite(w))
      throw ValidationError("run.spectrum_window", std::string(what) + ": frequencies must be positive and finite");
}

Eigen::VectorXd projected_dipoles(const ElectronicLevels& levels, const Vec3& pol) {
  const double n = norm(pol);
  if (!(std::abs(n - 1.0) <= 1e-9))
    throw ValidationError("run.polarization", "polarization must be a unit vector");
  Eigen::VectorXd d(static_cast<Index>(levels.size()));
  for (std::size_t i = 0; i < levels.size(); ++i) d[static_cast<Index>(i)] = dot(levels[i].dipole, pol);
  return d;
}

// sum_l L(w - w_l) * amp_l at every grid point.
std::vector<double> broaden(const Eigen::VectorXd& centers, const Eigen::VectorXd& amp, double gamma,
                            const std::vector<double>& omega, unsigned threads) {
  std::vector<Index> live;
  for (Index l = 0; l < amp.size(); ++l)
    if (amp[l] != 0.0) live.push_back(l);
  std::vector<double> out(omega.size(), 0.0);
  const double h2 = 0.25 * gamma * gamma;
  const double pref = gamma / (2.0 * std::numbers::pi);
  parallel_chunks(omega.size(), threads, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t p = b; p < e; ++p) {
      double acc = 0.0;
      for (Index l : live) {
        const double x = omega[p] - centers[l];
        acc += amp[l] / (x * x + h2);
      }
      out[p] = pref * acc;
    }
  });
  return out;
}

}  // namespace

double lorentzian(double x, double gamma) {
  return gamma / (2.0 * std::numbers::pi) / (x * x + 0.25 * gamma * gamma);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points == 0) throw ValidationError("run.spectrum_points", "need at least one point");
  if (!(hi >= lo)) throw ValidationError("run.spectrum_window", "window must be ordered");
  std::vector<double> g(points);
  if (points == 1) {
    g[0] = lo;
    return g;
  }
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

Spectrum absorption_spectrum(const PolaritonModes& modes, const ElectronicLevels& levels,
                             double gamma, const std::vector<double>& omega, const Vec3& polarization,
                             unsigned threads) {
  check_request(gamma, omega, "absorption spectrum");
  if (static_cast<Index>(levels.size()) != modes.el_count())
    throw ValidationError("levels", "level count does not match the solved system");
  const Eigen::VectorXd d = projected_dipoles(levels, polarization);
  const Eigen::VectorXd proj = modes.el_components * d;
  const Eigen::VectorXd amp =
      (modes.eigenvalues.array() * proj.array().square()).matrix();
  Spectrum s;
  s.omega = omega;
  s.intensity = broaden(modes.eigenvalues, amp, gamma, omega, threads);
  s.gamma = gamma;
  s.channel = Channel::total_absorption;
  return normalize(std::move(s));
}

Spectrum weight_spectrum(const PolaritonModes& modes, const ElectronicLevels& levels,
                         std::size_t state, double gamma, const std::vector<double>& omega,
                         unsigned threads) {
  check_request(gamma, omega, "weight spectrum");
  if (state >= levels.size() || static_cast<Index>(state) >= modes.el_count())
    throw ValidationError("run.state", "state index " + std::to_string(state) + " out of range");
  const Eigen::VectorXd amp = modes.el_components.col(static_cast<Index>(state)).array().square().matrix();
  Spectrum s;
  s.omega = omega;
  s.intensity = broaden(modes.eigenvalues, amp, gamma, omega, threads);
  s.gamma = gamma;
  s.channel = Channel::weight;
  s.state = levels[state].label;
  return normalize(std::move(s));
}

Spectrum resolvent_spectrum(const CoupledSystem& system, const ElectronicLevels& levels,
                            double gamma, const std::vector<double>& omega, const Vec3& polarization,
                            unsigned threads) {
  check_request(gamma, omega, "resolvent spectrum");
  const Index m = system.el_count();
  if (static_cast<Index>(levels.size()) != m)
    throw ValidationError("levels", "level count does not match the system");
  using cd = std::complex<double>;
  const Eigen::VectorXd d = projected_dipoles(levels, polarization);
  const Eigen::VectorXcd dc = d.cast<cd>();
  const Eigen::MatrixXd& u = system.coupling_basis();
  const Eigen::MatrixXd& r = system.reduced_coupling();
  const Eigen::VectorXd& ph = system.ph_energies();
  const Index rank = u.cols(), n = ph.size();
  const Eigen::MatrixXcd uc = u.cast<cd>();
  Eigen::VectorXd r2;
  if (rank == 1) r2 = r.row(0).array().square().matrix().transpose();

  Spectrum s;
  s.omega = omega;
  s.intensity.assign(omega.size(), 0.0);
  s.gamma = gamma;
  parallel_chunks(omega.size(), threads, [&](std::size_t b, std::size_t e, unsigned) {
    Eigen::MatrixXcd kern(rank, rank);
    for (std::size_t p = b; p < e; ++p) {
      const double w = omega[p];
      const double eta = 0.5 * gamma;
      kern.setZero();
      if (rank == 1) {
        // 1/(w - w_k + i eta) = (x - i eta) / (x^2 + eta^2)
        double re = 0.0, im = 0.0;
        for (Index k = 0; k < n; ++k) {
          const double x = w - ph[k];
          const double t = r2[k] / (x * x + eta * eta);
          re += t * x;
          im -= t * eta;
        }
        kern(0, 0) = cd(re, im);
      } else {
        for (Index k = 0; k < n; ++k) {
          const cd inv = 1.0 / cd(w - ph[k], eta);
          for (Index x = 0; x < rank; ++x)
            for (Index y = 0; y <= x; ++y) kern(x, y) += r(x, k) * r(y, k) * inv;
        }
        for (Index x = 0; x < rank; ++x)
          for (Index y = 0; y < x; ++y) kern(y, x) = kern(x, y);
      }
      Eigen::MatrixXcd a = -(uc * kern * uc.transpose());
      for (Index i = 0; i < m; ++i) a(i, i) += cd(w - system.el_energies()[i], eta);
      const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
      if (!(lu.rcond() > 1e-14)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "singular resolvent at omega = %.9g eV", w);
        throw SolverError(buf);
      }
      const cd g = dc.dot(lu.solve(dc));  // conjugates dc, which is real
      // Roundoff can leave values a hair below zero far from any peak.
      s.intensity[p] = std::max(0.0, -w / std::numbers::pi * g.imag());
    }
  });
  return normalize(std::move(s));
}

Spectrum normalize(Spectrum spectrum) {
  double peak = 0.0;
  for (double v : spectrum.intensity) peak = std::max(peak, v);
  if (!(peak > 0.0) || !std::isfinite(peak)) throw SolverError("spectrum is identically zero");
  for (double& v : spectrum.intensity) v /= peak;
  spectrum.scale_factor *= peak;
  spectrum.mode = PrefactorMode::normalized;
  return spectrum;
}

namespace {

void write_metadata(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& md) {
  for (const auto& [k, v] : md) os << "# " << k << ": " << v << '\n';
}

}  // namespace

void write_spectrum_csv(const Spectrum& spectrum, std::ostream& os,
                        const std::vector<std::pair<std::string, std::string>>& metadata) {
  write_metadata(os, metadata);
  os << "# channel: " << (spectrum.channel == Channel::total_absorption ? "absorption" : "weight:" + spectrum.state)
     << '\n';
  os << "# gamma_eV: " << fmt(spectrum.gamma) << '\n';
  os << "# scale_factor: " << fmt(spectrum.scale_factor) << '\n';
  os << "omega_eV,intensity_norm,scale_factor\n";
  const std::string sf = fmt(spectrum.scale_factor);
  for (std::size_t i = 0; i < spectrum.omega.size(); ++i)
    os << fmt(spectrum.omega[i]) << ',' << fmt(spectrum.intensity[i]) << ',' << sf << '\n';
}

void write_weight_spectra_csv(const std::vector<Spectrum>& curves, std::ostream& os,
                              const std::vector<std::pair<std::string, std::string>>& metadata) {
  if (curves.empty()) throw ValidationError("weights", "no weight curves to write");
  write_metadata(os, metadata);
  os << "# gamma_eV: " << fmt(curves.front().gamma) << '\n';
  for (const auto& c : curves) os << "# scale_factor " << c.state << ": " << fmt(c.scale_factor) << '\n';
  os << "omega_eV";
  for (const auto& c : curves) os << ',' << c.state;
  os << '\n';
  const std::size_t n = curves.front().omega.size();
  for (std::size_t i = 0; i < n; ++i) {
    os << fmt(curves.front().omega[i]);
    for (const auto& c : curves) os << ',' << fmt(c.intensity[i]);
    os << '\n';
  }
}

}  // namespace cavqed
