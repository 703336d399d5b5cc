#include "cavqed/hamiltonian.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

namespace cavqed {

double coupling_rate(double omega, const Vec3& lambda, const Vec3& dipole) {
  const double d_nm = 1.0 / Constants::angstrom_per_nm;
  return -std::sqrt(0.5 * omega) * dot(lambda, dipole) * d_nm;
}

CoupledSystem::CoupledSystem(Eigen::VectorXd el_energies, Eigen::VectorXd ph_energies,
                             Eigen::MatrixXd coupling, std::vector<std::string> labels)
    : el_(std::move(el_energies)),
      ph_(std::move(ph_energies)),
      g_(std::move(coupling)),
      labels_(std::move(labels)) {
  const Eigen::Index m = el_.size();
  const Eigen::Index n = ph_.size();
  if (m == 0) throw ValidationError("levels", "system needs at least one electronic level");
  if (n == 0) throw ValidationError("grid", "system needs at least one photon mode");
  if (g_.rows() != m || g_.cols() != n)
    throw ValidationError("coupling", "coupling block must be M x N");
  if (!el_.allFinite() || !ph_.allFinite() || !g_.allFinite())
    throw ValidationError("system", "all entries must be finite");
  for (Eigen::Index k = 1; k < n; ++k)
    if (!(ph_[k] > ph_[k - 1]))
      throw ValidationError("ph_energies", "photon energies must be strictly increasing");
  if (labels_.empty())
    for (Eigen::Index i = 0; i < m; ++i) labels_.push_back("e" + std::to_string(i + 1));
  if (static_cast<Eigen::Index>(labels_.size()) != m)
    throw ValidationError("labels", "one label per electronic level");

  // G = U S V^T; keep directions whose singular value is above 1e-12 of the
  // largest. The Gram matrix G G^T cannot resolve that far below roundoff.
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(g_, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s.size() && s[0] > 0.0)
    while (rank < s.size() && s[rank] > 1e-12 * s[0]) ++rank;
  basis_ = svd.matrixU().leftCols(rank);
  reduced_ = basis_.transpose() * g_;
}

Eigen::MatrixXd CoupledSystem::dense() const {
  const Eigen::Index m = el_count(), n = ph_count();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + n, m + n);
  h.diagonal().head(m) = el_;
  h.diagonal().tail(n) = ph_;
  h.topRightCorner(m, n) = g_;
  h.bottomLeftCorner(n, m) = g_.transpose();
  return h;
}

CoupledSystem assemble(const ElectronicLevels& levels, const PhotonGrid& grid) {
  auto issues = check_levels(levels);
  auto more = check_grid(grid);
  issues.insert(issues.end(), more.begin(), more.end());
  if (grid.empty()) issues.push_back({"grid", "system needs at least one photon mode"});
  if (!issues.empty()) throw ValidationError(std::move(issues));

  const auto m = static_cast<Eigen::Index>(levels.size());
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd el(m), ph(n);
  Eigen::MatrixXd g(m, n);
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < m; ++i) {
    el[i] = levels[static_cast<std::size_t>(i)].energy;
    labels.push_back(levels[static_cast<std::size_t>(i)].label);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto& mode = grid[static_cast<std::size_t>(k)];
    ph[k] = mode.omega;
    for (Eigen::Index i = 0; i < m; ++i)
      g(i, k) = coupling_rate(mode.omega, mode.lambda, levels[static_cast<std::size_t>(i)].dipole);
  }
  return CoupledSystem(std::move(el), std::move(ph), std::move(g), std::move(labels));
}

Eigen::MatrixXcd self_energy(const CoupledSystem& system, std::complex<double> z) {
  const auto& ph = system.ph_energies();
  const auto& r = system.reduced_coupling();
  const Eigen::Index rank = system.coupling_rank();
  if (z.imag() == 0.0) {
    for (Eigen::Index k = 0; k < ph.size(); ++k)
      if (ph[k] == z.real()) throw PoleError(z.real(), static_cast<std::size_t>(k));
  }
  Eigen::MatrixXcd kern = Eigen::MatrixXcd::Zero(rank, rank);
  for (Eigen::Index k = 0; k < ph.size(); ++k) {
    const std::complex<double> inv = 1.0 / (z - ph[k]);
    for (Eigen::Index a = 0; a < rank; ++a)
      for (Eigen::Index b = 0; b <= a; ++b) kern(a, b) += r(a, k) * r(b, k) * inv;
  }
  for (Eigen::Index a = 0; a < rank; ++a)
    for (Eigen::Index b = 0; b < a; ++b) kern(b, a) = kern(a, b);
  const Eigen::MatrixXcd u = system.coupling_basis().cast<std::complex<double>>();
  return u * kern * u.transpose();
}

namespace {

constexpr char kMagic[8] = {'C', 'A', 'V', 'Q', 'E', 'D', 'H', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8))
    throw ValidationError("binary", "truncated system container");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_system_binary(const CoupledSystem& system, std::ostream& os) {
  os.write(kMagic, sizeof kMagic);
  const auto m = system.el_count(), n = system.ph_count();
  put_u64(os, static_cast<std::uint64_t>(m));
  put_u64(os, static_cast<std::uint64_t>(n));
  for (Eigen::Index i = 0; i < m; ++i) put_f64(os, system.el_energies()[i]);
  for (Eigen::Index k = 0; k < n; ++k) put_f64(os, system.ph_energies()[k]);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = 0; k < n; ++k) put_f64(os, system.coupling()(i, k));
}

CoupledSystem read_system_binary(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw ValidationError("binary", "not a cavqed system container");
  const auto m = static_cast<Eigen::Index>(get_u64(is));
  const auto n = static_cast<Eigen::Index>(get_u64(is));
  Eigen::VectorXd el(m), ph(n);
  Eigen::MatrixXd g(m, n);
  for (Eigen::Index i = 0; i < m; ++i) el[i] = get_f64(is);
  for (Eigen::Index k = 0; k < n; ++k) ph[k] = get_f64(is);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = 0; k < n; ++k) g(i, k) = get_f64(is);
  return CoupledSystem(std::move(el), std::move(ph), std::move(g));
}

}  // namespace cavqed
