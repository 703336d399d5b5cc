#include "cavqed/discretize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cavqed {

double lorentzian_weight(double spacing, double kappa, double detuning) {
  if (!(spacing > 0.0)) throw ValidationError("spacing", "spacing must be positive");
  if (!(kappa > 0.0)) throw ValidationError("kappa", "loss must be positive");
  const double hw = 0.5 * kappa;
  return spacing * kappa / (2.0 * std::numbers::pi * (detuning * detuning + hw * hw));
}

PhotonGrid build_photon_grid(const CavityModel& cavity) {
  if (auto issues = check_cavity(cavity); !issues.empty()) throw ValidationError(issues);

  const std::size_t n = cavity.mode_count();
  // Index of omega_c on the grid. Snapping to a half-integer makes the grid
  // exactly mirror-symmetric about omega_c when the window is.
  double center = (cavity.omega_c - cavity.omega_min) / cavity.spacing;
  const double snapped = std::round(2.0 * center) / 2.0;
  if (std::abs(center - snapped) < 1e-6) center = snapped;

  PhotonGrid grid;
  grid.modes.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double offset = (static_cast<double>(k) - center) * cavity.spacing;
    const double omega = cavity.omega_c + offset;
    const double weight = lorentzian_weight(cavity.spacing, cavity.kappa, offset);
    grid.modes.push_back({omega, scaled(cavity.lambda_c, std::sqrt(weight)), cavity.spacing});
  }
  if (!grid.modes.empty() && grid.modes.front().omega <= 0.0)
    throw ValidationError("cavity.window", "grid reaches non-positive frequencies");
  return grid;
}

std::optional<double> check_sum_rule(const PhotonGrid& grid, const CavityModel& cavity) {
  const double total = dot(cavity.lambda_c, cavity.lambda_c);
  if (total == 0.0) return std::nullopt;
  double sum = 0.0;
  for (const auto& m : grid.modes) sum += dot(m.lambda, m.lambda);
  return sum / total;
}

std::vector<Issue> check_grid(const PhotonGrid& grid) {
  std::vector<Issue> out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& m = grid[k];
    const std::string p = "grid[" + std::to_string(k) + "]";
    if (!std::isfinite(m.omega) || m.omega <= 0.0) out.push_back({p + ".omega", "must be positive"});
    if (!std::isfinite(m.weight) || m.weight <= 0.0)
      out.push_back({p + ".weight", "must be positive"});
    for (double c : m.lambda)
      if (!std::isfinite(c)) out.push_back({p + ".lambda", "must be finite"});
    if (k > 0 && !(m.omega > grid[k - 1].omega))
      out.push_back({p + ".omega", "frequencies must be strictly increasing"});
  }
  return out;
}

void write_grid_csv(const PhotonGrid& grid, std::ostream& os) {
  os << "# provenance: " << grid.provenance << '\n';
  os << "omega_eV,lambda_x,lambda_y,lambda_z,weight_eV\n";
  char buf[160];
  for (const auto& m : grid.modes) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", m.omega, m.lambda[0],
                  m.lambda[1], m.lambda[2], m.weight);
    os << buf;
  }
}

PhotonGrid read_grid_csv(std::istream& is) {
  PhotonGrid grid;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string key = "# provenance: ";
      if (line.rfind(key, 0) == 0) grid.provenance = line.substr(key.size());
      continue;
    }
    if (!header_seen) {
      if (line != "omega_eV,lambda_x,lambda_y,lambda_z,weight_eV")
        throw ValidationError("grid.csv:" + std::to_string(lineno), "unexpected header");
      header_seen = true;
      continue;
    }
    double v[5];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int c = 0; c < 5; ++c) {
      auto [next, ec] = std::from_chars(p, end, v[c]);
      if (ec != std::errc{})
        throw ValidationError("grid.csv:" + std::to_string(lineno), "malformed number");
      p = next;
      if (c < 4) {
        if (p == end || *p != ',')
          throw ValidationError("grid.csv:" + std::to_string(lineno), "expected 5 columns");
        ++p;
      }
    }
    grid.modes.push_back({v[0], {v[1], v[2], v[3]}, v[4]});
  }
  if (!header_seen) throw ValidationError("grid.csv", "missing header");
  if (auto issues = check_grid(grid); !issues.empty()) throw ValidationError(issues);
  return grid;
}

}  // namespace cavqed
