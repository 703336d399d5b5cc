#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cavqed/hamiltonian.hpp"

namespace cavqed {

struct SolverOptions {
  unsigned threads = 0;              // 0: hardware concurrency
  double cluster_tolerance = 1e-11;  // eV; closer roots are resolved by Rayleigh-Ritz
  std::size_t dense_cap = 4000;      // max M+N for the dense solver
  int max_iterations = 200;          // per root
};

enum class ModeOrigin : std::uint8_t {
  secular,    // root of the secular equation, anchored to a photon frequency
  electronic, // uncoupled electronic level passed through
  photonic,   // uncoupled photon mode passed through
  dense,      // from explicit diagonalization
};

/// Eigenpairs of the single-excitation Hamiltonian, stored without the full
/// (M+N)^2 eigenvector matrix. Row l of el_components holds C^el_{i,l}.
struct PolaritonModes {
  Eigen::VectorXd eigenvalues;    // eV, ascending
  Eigen::MatrixXd el_components;  // (M+N) x M
  Eigen::VectorXd el_weight;      // w^el_l
  Eigen::VectorXd ph_weight;      // w^ph_l = 1 - w^el_l

  // Secular roots are eigenvalue = ph[anchor] + offset, kept separately so
  // photon components can be rebuilt without cancellation near the poles.
  std::vector<ModeOrigin> origin;
  std::vector<Eigen::Index> anchor;
  Eigen::VectorXd offset;

  std::optional<Eigen::MatrixXd> ph_components;  // N x (M+N), dense solver only

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
  Eigen::Index el_count() const noexcept { return el_components.cols(); }
};

/// All M+N eigenpairs from the secular equation det(E + Sigma(z) - z) = 0,
/// bracketed per photon interval by inertia counts and refined in coordinates
/// shifted to the nearest photon frequency. O((M+N) * N * r^2) work.
PolaritonModes eigensolve_structured(const CoupledSystem& system, const SolverOptions& opts = {});

/// Reference path: explicit symmetric diagonalization. Throws SolverError above opts.dense_cap.
PolaritonModes eigensolve_dense(const CoupledSystem& system, const SolverOptions& opts = {});

/// Photon amplitudes C^ph_{k,l} for k in [first, first+count) and every l.
Eigen::MatrixXd photon_components(const CoupledSystem& system, const PolaritonModes& modes,
                                  Eigen::Index first, Eigen::Index count);

struct WeightTable {
  Eigen::MatrixXd W;         // (M+N) x M, W_il = |C_il|^2 stored per row l
  Eigen::VectorXd el_total;  // w^el_l
  Eigen::VectorXd ph_total;  // w^ph_l
};

WeightTable weights(const PolaritonModes& modes);

/// CSV `omega_l_eV,w_el,w_ph,C_1,...,C_M` (9 significant digits).
void write_eigen_table_csv(const PolaritonModes& modes, const std::vector<std::string>& labels,
                           std::ostream& os);

}  // namespace cavqed
