#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavqed/discretize.hpp"
#include "cavqed/model.hpp"

namespace cavqed {

/// hbar*g in eV for one electronic transition and one photon mode:
///   -sqrt(omega/2) * (lambda . d), with d converted from e*Angstrom to e*nm.
double coupling_rate(double omega, const Vec3& lambda, const Vec3& dipole);

/// Single-excitation rotating-wave Hamiltonian in bordered-diagonal form:
///
///   [ diag(el)   G       ]
///   [ G^T        diag(ph)]
///
/// with G the dense M x N block of hbar*g_{i,k}. Photon energies are strictly
/// increasing. The constructor also factors G = U R with U (M x r) orthonormal
/// and r = numerical rank, which all O(N) inner loops run on.
class CoupledSystem {
 public:
  CoupledSystem(Eigen::VectorXd el_energies, Eigen::VectorXd ph_energies,
                Eigen::MatrixXd coupling, std::vector<std::string> labels = {});

  Eigen::Index el_count() const noexcept { return el_.size(); }
  Eigen::Index ph_count() const noexcept { return ph_.size(); }
  Eigen::Index size() const noexcept { return el_.size() + ph_.size(); }

  const Eigen::VectorXd& el_energies() const noexcept { return el_; }
  const Eigen::VectorXd& ph_energies() const noexcept { return ph_; }
  const Eigen::MatrixXd& coupling() const noexcept { return g_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  const Eigen::MatrixXd& coupling_basis() const noexcept { return basis_; }
  const Eigen::MatrixXd& reduced_coupling() const noexcept { return reduced_; }
  Eigen::Index coupling_rank() const noexcept { return basis_.cols(); }

  /// Explicit (M+N) x (M+N) matrix. Only sensible for small systems.
  Eigen::MatrixXd dense() const;

 private:
  Eigen::VectorXd el_;
  Eigen::VectorXd ph_;
  Eigen::MatrixXd g_;
  std::vector<std::string> labels_;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd reduced_;
};

CoupledSystem assemble(const ElectronicLevels& levels, const PhotonGrid& grid);

/// Sigma_ij(z) = sum_k g_ik g_jk / (z - omega_k). Throws PoleError when z is
/// real and lands exactly on a photon frequency.
Eigen::MatrixXcd self_energy(const CoupledSystem& system, std::complex<double> z);

/// Little-endian container: 8-byte magic "CAVQEDH1", uint64 M, uint64 N,
/// then float64 el[M], ph[N], coupling[M*N] (row-major, i-major).
void write_system_binary(const CoupledSystem& system, std::ostream& os);
CoupledSystem read_system_binary(std::istream& is);

}  // namespace cavqed
