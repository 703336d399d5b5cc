#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cavqed/error.hpp"
#include "cavqed/units.hpp"

namespace cavqed {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

struct Level {
  std::string label;
  double energy = 0.0;  // eV
  Vec3 dipole{};        // e*Angstrom

  friend bool operator==(const Level&, const Level&) = default;
};

/// Electronic excitations sorted by energy, with unique labels.
struct ElectronicLevels {
  std::vector<Level> levels;

  std::size_t size() const noexcept { return levels.size(); }
  bool empty() const noexcept { return levels.empty(); }
  const Level& operator[](std::size_t i) const { return levels[i]; }

  /// Index of the level with this label; throws ValidationError if absent.
  std::size_t index_of(const std::string& label) const;

  friend bool operator==(const ElectronicLevels&, const ElectronicLevels&) = default;
};

/// Single lossy cavity mode broadened into a uniform grid of photon modes.
struct CavityModel {
  double omega_c = 0.0;  // eV
  Vec3 lambda_c{};       // eV^(1/2)/nm
  double kappa = 0.0;    // eV, Lorentzian FWHM
  double omega_min = 0.0;
  double omega_max = 0.0;
  double spacing = 0.0;  // eV
  std::size_t max_modes = 1'000'000;

  std::size_t mode_count() const;

  friend bool operator==(const CavityModel&, const CavityModel&) = default;
};

std::vector<Issue> check_levels(const ElectronicLevels& levels);
std::vector<Issue> check_cavity(const CavityModel& cavity);

/// Every violated invariant of the pair, with field paths. Empty when valid.
std::vector<Issue> check_inputs(const ElectronicLevels& levels, const CavityModel& cavity);

/// Returns the inputs unchanged, or throws ValidationError listing every issue.
std::pair<ElectronicLevels, CavityModel> validate_inputs(const ElectronicLevels& levels,
                                                         const CavityModel& cavity);

}  // namespace cavqed
