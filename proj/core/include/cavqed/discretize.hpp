#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cavqed/model.hpp"

namespace cavqed {

struct PhotonMode {
  double omega = 0.0;   // eV
  Vec3 lambda{};        // eV^(1/2)/nm
  double weight = 0.0;  // effective spacing of this mode, eV

  friend bool operator==(const PhotonMode&, const PhotonMode&) = default;
};

/// Discrete photon continuum. Frequencies strictly increasing; each mode
/// carries its own quadrature weight so nonuniform grids are first class.
struct PhotonGrid {
  std::vector<PhotonMode> modes;
  std::string provenance = "uniform";  // or "transformed(<mapping id>)"

  std::size_t size() const noexcept { return modes.size(); }
  bool empty() const noexcept { return modes.empty(); }
  const PhotonMode& operator[](std::size_t k) const { return modes[k]; }
};

/// Lorentzian filter L(dw, kappa, w_kc) = dw / (2 pi) * kappa / (w_kc^2 + (kappa/2)^2).
double lorentzian_weight(double spacing, double kappa, double detuning);

/// One mode per grid point with |lambda_k|^2 = |lambda_c|^2 L(dw, kappa, w_k - w_c),
/// lambda_k parallel to lambda_c. Throws ValidationError for an invalid cavity.
PhotonGrid build_photon_grid(const CavityModel& cavity);

/// Fraction sum_k |lambda_k|^2 / |lambda_c|^2 of the cavity strength captured by
/// the grid. nullopt when lambda_c = 0 (coverage not applicable).
std::optional<double> check_sum_rule(const PhotonGrid& grid, const CavityModel& cavity);

/// CSV with header `omega_eV,lambda_x,lambda_y,lambda_z,weight_eV`. Values are
/// written with 17 significant digits so a re-imported grid is bit-identical.
void write_grid_csv(const PhotonGrid& grid, std::ostream& os);
PhotonGrid read_grid_csv(std::istream& is);

/// Structural checks: frequencies positive and strictly increasing, weights positive.
std::vector<Issue> check_grid(const PhotonGrid& grid);

}  // namespace cavqed
