#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavqed/eigensolve.hpp"
#include "cavqed/hamiltonian.hpp"
#include "cavqed/model.hpp"

namespace cavqed {

/// Single-excitation amplitudes, electronic levels first, then photon modes.
using Amplitudes = Eigen::VectorXcd;

struct Trajectory {
  std::vector<double> times;         // fs
  std::vector<std::string> labels;   // electronic states
  Eigen::MatrixXd el_populations;    // times x M, |c_i(t)|^2
  std::vector<double> photon_total;  // sum_k |c_k(t)|^2
  std::vector<double> norm;          // electronic + photon, summed explicitly

  std::size_t size() const noexcept { return times.size(); }
  double max_norm_error() const;
};

/// Pure electronic basis state |label, 0>. Throws ValidationError for an unknown label.
Amplitudes basis_state(const CoupledSystem& system, const std::string& label);

/// c(t) = V exp(-i Lambda t / hbar) V^T c(0) from precomputed eigenpairs.
/// `initial` must be normalized; times ascending and non-negative.
Trajectory propagate(const CoupledSystem& system, const PolaritonModes& modes,
                     const Amplitudes& initial, const std::vector<double>& times, unsigned threads = 0);

Trajectory propagate(const CoupledSystem& system, const PolaritonModes& modes,
                     const std::string& initial, const std::vector<double>& times, unsigned threads = 0);

/// Amplitudes at time t (fs, either sign), absolute phase included.
Amplitudes evolve(const CoupledSystem& system, const PolaritonModes& modes, const Amplitudes& c, double t);

/// Same, solving the eigenproblem with the structured solver first.
Trajectory propagate(const CoupledSystem& system, const std::string& initial,
                     const std::vector<double>& times, const SolverOptions& opts = {});

struct DecayFit {
  double rate = 0.0;          // hbar*Gamma, eV
  double lifetime = 0.0;      // fs, infinite when rate <= 0
  bool monotone = true;       // false: oscillatory, not an exponential decay
  bool decayed = true;        // population fell by at least 1/e over the window
  std::size_t points = 0;
};

/// Least-squares slope of ln P_i(t) over t in [t_begin, t_end].
DecayFit fit_decay_rate(const Trajectory& traj, std::size_t state, double t_begin, double t_end);

struct RabiEstimate {
  double frequency = 0.0;  // hbar*omega_R, eV
  bool overdamped = false;
};

/// hbar * 2 pi / (mean spacing of the interior maxima of P_i(t)). Maxima need a
/// prominence of 1e-3 of the population range. Fewer than two: overdamped.
RabiEstimate extract_rabi_frequency(const Trajectory& traj, std::size_t state);

/// 2 pi hbar / max photon spacing: the earliest revival of a discretized continuum, fs.
double recurrence_time(const CoupledSystem& system);

/// Default trajectory length: min(5 tau, 0.4 T_rec), with tau = hbar / Gamma
/// for the pseudomode decay rate of the initial level.
double default_duration(const ElectronicLevels& levels, const CavityModel& cavity,
                        const std::string& initial);

/// `t_fs,pop_<label>...,pop_photon_total,norm` (9 significant digits).
void write_trajectory_csv(const Trajectory& traj, std::ostream& os,
                          const std::vector<std::pair<std::string, std::string>>& metadata = {});

}  // namespace cavqed
