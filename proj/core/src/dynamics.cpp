#include "cavqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "cavqed/error.hpp"
#include "cavqed/format.hpp"
#include "cavqed/parallel.hpp"
#include "cavqed/units.hpp"

namespace cavqed {
namespace {

using Eigen::Index;
using cd = std::complex<double>;

constexpr Index kPhotonBlock = 128;
constexpr Index kTimeBlock = 256;

void check_times(const std::vector<double>& times) {
  if (times.empty()) throw ValidationError("run.t_points", "time grid is empty");
  if (!(times.front() >= 0.0)) throw ValidationError("run.t_end_fs", "times must start at or after 0");
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (!std::isfinite(times[j])) throw ValidationError("run.t_end_fs", "times must be finite");
    if (j > 0 && !(times[j] > times[j - 1]))
      throw ValidationError("run.t_points", "times must be strictly ascending");
  }
}

}  // namespace

double Trajectory::max_norm_error() const {
  double e = 0.0;
  for (double v : norm) e = std::max(e, std::abs(v - 1.0));
  return e;
}

Amplitudes basis_state(const CoupledSystem& system, const std::string& label) {
  const auto& labels = system.labels();
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ValidationError("run.initial", "unknown initial state '" + label + "'");
  Amplitudes a = Amplitudes::Zero(system.size());
  a[it - labels.begin()] = 1.0;
  return a;
}

Trajectory propagate(const CoupledSystem& system, const PolaritonModes& modes,
                     const Amplitudes& initial, const std::vector<double>& times, unsigned threads) {
  const Index m = system.el_count(), n = system.ph_count(), total = system.size();
  if (initial.size() != total)
    throw ValidationError("run.initial", "initial amplitude vector must have M+N entries");
  if (!initial.allFinite()) throw ValidationError("run.initial", "initial amplitudes must be finite");
  if (std::abs(initial.squaredNorm() - 1.0) > 1e-10)
    throw ValidationError("run.initial", "initial state must be normalized");
  if (modes.size() != total) throw ValidationError("modes", "eigenpairs do not match the system");
  check_times(times);

  // Overlaps a_l = <v_l|psi0>.
  const Eigen::MatrixXd& c_el = modes.el_components;  // L x M
  Amplitudes a = c_el * initial.head(m);
  const Amplitudes psi_ph = initial.tail(n);
  if (psi_ph.cwiseAbs().maxCoeff() > 0.0) {
    for (Index k0 = 0; k0 < n; k0 += kPhotonBlock) {
      const Index cnt = std::min(kPhotonBlock, n - k0);
      const Eigen::MatrixXd p = photon_components(system, modes, k0, cnt);
      a += p.transpose() * psi_ph.segment(k0, cnt);
    }
  }

  // Phases are taken relative to the mean energy; populations are unaffected.
  const double e_ref = (a.cwiseAbs2().array() * modes.eigenvalues.array()).sum();
  const Eigen::ArrayXd rel = modes.eigenvalues.array() - e_ref;

  const auto nt = static_cast<Index>(times.size());
  Trajectory tr;
  tr.times = times;
  tr.labels = system.labels();
  tr.el_populations.resize(nt, m);
  tr.photon_total.assign(times.size(), 0.0);
  tr.norm.assign(times.size(), 0.0);

  const Index blocks = (n + kPhotonBlock - 1) / kPhotonBlock;
  std::vector<Eigen::VectorXd> partial(static_cast<std::size_t>(blocks));
  for (Index t0 = 0; t0 < nt; t0 += kTimeBlock) {
    const Index tc = std::min(kTimeBlock, nt - t0);
    // B_lt = a_l exp(-i (w_l - e_ref) t / hbar), split into real and imaginary parts.
    Eigen::MatrixXd br(total, tc), bi(total, tc);
    for (Index j = 0; j < tc; ++j) {
      const double t = times[static_cast<std::size_t>(t0 + j)] / Constants::hbar;
      for (Index l = 0; l < total; ++l) {
        const cd v = a[l] * std::polar(1.0, -rel[l] * t);
        br(l, j) = v.real();
        bi(l, j) = v.imag();
      }
    }
    const Eigen::MatrixXd er = c_el.transpose() * br, ei = c_el.transpose() * bi;  // M x tc
    const Eigen::ArrayXXd el_pop = er.array().square() + ei.array().square();
    tr.el_populations.middleRows(t0, tc) = el_pop.matrix().transpose();

    parallel_chunks(static_cast<std::size_t>(blocks), threads, [&](std::size_t b, std::size_t e, unsigned) {
      for (std::size_t blk = b; blk < e; ++blk) {
        const Index k0 = static_cast<Index>(blk) * kPhotonBlock;
        const Index cnt = std::min(kPhotonBlock, n - k0);
        const Eigen::MatrixXd p = photon_components(system, modes, k0, cnt);
        const Eigen::MatrixXd pr = p * br, pi = p * bi;
        partial[blk] = (pr.array().square() + pi.array().square()).colwise().sum().transpose();
      }
    });
    // Fixed block order keeps the sum independent of the worker count.
    for (Index j = 0; j < tc; ++j) {
      double ph = 0.0;
      for (const auto& blk : partial) ph += blk[j];
      const auto idx = static_cast<std::size_t>(t0 + j);
      tr.photon_total[idx] = ph;
      tr.norm[idx] = el_pop.col(j).sum() + ph;
    }
  }
  return tr;
}

Amplitudes evolve(const CoupledSystem& system, const PolaritonModes& modes, const Amplitudes& c, double t) {
  const Index m = system.el_count(), n = system.ph_count();
  if (c.size() != system.size() || modes.size() != system.size())
    throw ValidationError("run.initial", "amplitude vector must have M+N entries");
  Amplitudes a = modes.el_components * c.head(m);
  for (Index k0 = 0; k0 < n; k0 += kPhotonBlock) {
    const Index cnt = std::min(kPhotonBlock, n - k0);
    const Eigen::MatrixXd p = photon_components(system, modes, k0, cnt);
    a += p.transpose() * c.segment(m + k0, cnt);
  }
  for (Index l = 0; l < a.size(); ++l) a[l] *= std::polar(1.0, -modes.eigenvalues[l] * t / Constants::hbar);
  Amplitudes out(system.size());
  out.head(m) = modes.el_components.transpose() * a;
  for (Index k0 = 0; k0 < n; k0 += kPhotonBlock) {
    const Index cnt = std::min(kPhotonBlock, n - k0);
    out.segment(k0 + m, cnt) = photon_components(system, modes, k0, cnt) * a;
  }
  return out;
}

Trajectory propagate(const CoupledSystem& system, const PolaritonModes& modes,
                     const std::string& initial, const std::vector<double>& times, unsigned threads) {
  return propagate(system, modes, basis_state(system, initial), times, threads);
}

Trajectory propagate(const CoupledSystem& system, const std::string& initial,
                     const std::vector<double>& times, const SolverOptions& opts) {
  const Amplitudes a = basis_state(system, initial);
  check_times(times);
  return propagate(system, eigensolve_structured(system, opts), a, times, opts.threads);
}

DecayFit fit_decay_rate(const Trajectory& traj, std::size_t state, double t_begin, double t_end) {
  if (state >= static_cast<std::size_t>(traj.el_populations.cols()))
    throw ValidationError("state", "state index out of range");
  if (!(t_end > t_begin)) throw ValidationError("window", "fit window must have positive length");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t cnt = 0;
  DecayFit fit;
  double first = -1.0, last = -1.0, prev = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const double t = traj.times[j];
    if (t < t_begin || t > t_end) continue;
    const double p = traj.el_populations(static_cast<Index>(j), static_cast<Index>(state));
    if (p > prev * (1.0 + 1e-9)) fit.monotone = false;
    prev = p;
    if (first < 0.0) first = p;
    last = p;
    if (!(p > 0.0)) {
      fit.monotone = false;
      continue;
    }
    const double y = std::log(p);
    sx += t;
    sy += y;
    sxx += t * t;
    sxy += t * y;
    ++cnt;
  }
  fit.points = cnt;
  if (cnt < 2) throw ValidationError("window", "fit window holds fewer than two usable samples");
  const double dn = static_cast<double>(cnt);
  const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);  // 1/fs
  fit.rate = -slope * Constants::hbar;
  fit.lifetime = fit.rate > 0.0 ? Constants::hbar / fit.rate : std::numeric_limits<double>::infinity();
  fit.decayed = first > 0.0 && last <= first / std::numbers::e;
  return fit;
}

RabiEstimate extract_rabi_frequency(const Trajectory& traj, std::size_t state) {
  if (state >= static_cast<std::size_t>(traj.el_populations.cols()))
    throw ValidationError("state", "state index out of range");
  const std::size_t nt = traj.size();
  RabiEstimate est;
  est.overdamped = true;
  if (nt < 3) return est;
  const Eigen::VectorXd p = traj.el_populations.col(static_cast<Index>(state));
  const double span = p.maxCoeff() - p.minCoeff();
  if (!(span > 0.0)) return est;

  // Interior maxima with a real drop on both sides. A decaying envelope would
  // swamp a spectral estimate, but leaves the spacing of the maxima alone.
  std::vector<double> peaks;
  for (std::size_t j = 1; j + 1 < nt; ++j) {
    const auto i = static_cast<Index>(j);
    if (!(p[i] > p[i - 1] && p[i] >= p[i + 1])) continue;
    double left = p[i], right = p[i];
    for (Index q = i - 1; q >= 0 && p[q] <= p[i]; --q) left = std::min(left, p[q]);
    for (Index q = i + 1; q < static_cast<Index>(nt) && p[q] <= p[i]; ++q) right = std::min(right, p[q]);
    if (p[i] - std::max(left, right) < 1e-3 * span) continue;
    // parabola through the three samples
    const double t0 = traj.times[j - 1], t1 = traj.times[j], t2 = traj.times[j + 1];
    const double y0 = p[i - 1], y1 = p[i], y2 = p[i + 1];
    const double d01 = (y1 - y0) / (t1 - t0), d12 = (y2 - y1) / (t2 - t1);
    const double curv = (d12 - d01) / (t2 - t0);
    double t = t1;
    if (curv < 0.0) t = 0.5 * (t0 + t1) - d01 / (2.0 * curv);
    peaks.push_back(std::clamp(t, t0, t2));
  }
  if (peaks.size() < 2) return est;
  const double period = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  est.frequency = 2.0 * std::numbers::pi * Constants::hbar / period;
  est.overdamped = false;
  return est;
}

double recurrence_time(const CoupledSystem& system) {
  const auto& ph = system.ph_energies();
  if (ph.size() < 2) return std::numeric_limits<double>::infinity();
  double widest = 0.0;
  for (Index k = 1; k < ph.size(); ++k) widest = std::max(widest, ph[k] - ph[k - 1]);
  return 2.0 * std::numbers::pi * Constants::hbar / widest;
}

double default_duration(const ElectronicLevels& levels, const CavityModel& cavity,
                        const std::string& initial) {
  const Level& lv = levels[levels.index_of(initial)];
  const double g = std::abs(coupling_rate(cavity.omega_c, cavity.lambda_c, lv.dipole));
  const double k = cavity.kappa;
  const double t_rec = 2.0 * std::numbers::pi * Constants::hbar / cavity.spacing;
  double gamma = 0.5 * k;
  if (4.0 * g < k) gamma = 0.5 * k * (1.0 - std::sqrt(1.0 - 16.0 * g * g / (k * k)));
  if (!(gamma > 0.0)) return 0.4 * t_rec;
  return std::min(5.0 * Constants::hbar / gamma, 0.4 * t_rec);
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os,
                          const std::vector<std::pair<std::string, std::string>>& metadata) {
  for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << '\n';
  os << "t_fs";
  for (const auto& l : traj.labels) os << ",pop_" << l;
  os << ",pop_photon_total,norm\n";
  for (std::size_t j = 0; j < traj.size(); ++j) {
    os << fmt(traj.times[j]);
    for (Index i = 0; i < traj.el_populations.cols(); ++i)
      os << ',' << fmt(traj.el_populations(static_cast<Index>(j), i));
    os << ',' << fmt(traj.photon_total[j]) << ',' << fmt(traj.norm[j]) << '\n';
  }
}

}  // namespace cavqed
