#include "cavqed/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cavqed {

namespace {

std::string join_issues(const std::vector<Issue>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i].path << ": " << issues[i].message;
  }
  return os.str();
}

bool finite3(const Vec3& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : std::invalid_argument(join_issues(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(std::string path, std::string message)
    : ValidationError(std::vector<Issue>{{std::move(path), std::move(message)}}) {}

PoleError::PoleError(double z, std::size_t mode)
    : SolverError("self-energy pole hit: real frequency " + std::to_string(z) +
                  " eV coincides with photon mode " + std::to_string(mode)),
      z_(z),
      mode_(mode) {}

std::size_t ElectronicLevels::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i].label == label) return i;
  throw ValidationError("initial", "unknown electronic state label '" + label + "'");
}

std::size_t CavityModel::mode_count() const {
  const double span = (omega_max - omega_min) / spacing;
  if (!std::isfinite(span) || span < 0) return 0;
  return static_cast<std::size_t>(std::llround(span)) + 1;
}

std::vector<Issue> check_levels(const ElectronicLevels& levels) {
  std::vector<Issue> out;
  auto add = [&out](std::string path, std::string msg) {
    out.push_back({std::move(path), std::move(msg)});
  };

  if (levels.empty()) add("levels", "at least one electronic level is required");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const Level& l = levels[i];
    const std::string p = "levels[" + std::to_string(i) + "]";
    if (!std::isfinite(l.energy))
      add(p + ".energy", "must be finite");
    else if (l.energy <= 0.0)
      add(p + ".energy", "energy must be positive");
    if (!finite3(l.dipole)) add(p + ".dipole", "must be finite");
    if (l.label.empty()) add(p + ".label", "label must not be empty");
    if (!seen.insert(l.label).second) add(p + ".label", "duplicate label '" + l.label + "'");
    if (i > 0 && l.energy < levels[i - 1].energy)
      add(p + ".energy", "levels must be sorted by ascending energy");
  }
  return out;
}

std::vector<Issue> check_cavity(const CavityModel& c) {
  std::vector<Issue> out;
  auto add = [&out](std::string path, std::string msg) {
    out.push_back({std::move(path), std::move(msg)});
  };
  bool numbers_ok = true;
  auto finite_field = [&](const char* name, double v) {
    if (!std::isfinite(v)) {
      add(std::string("cavity.") + name, "must be finite");
      numbers_ok = false;
    }
  };
  finite_field("omega_c", c.omega_c);
  finite_field("kappa", c.kappa);
  finite_field("window[0]", c.omega_min);
  finite_field("window[1]", c.omega_max);
  finite_field("spacing", c.spacing);
  if (!finite3(c.lambda_c)) add("cavity.lambda_c", "must be finite");
  if (!numbers_ok) return out;

  if (c.kappa <= 0.0) add("cavity.kappa", "loss must be positive");
  if (c.spacing <= 0.0) add("cavity.spacing", "spacing must be positive");
  if (c.omega_min <= 0.0) add("cavity.window[0]", "window frequencies must be positive");
  if (!(c.omega_min < c.omega_c && c.omega_c < c.omega_max))
    add("cavity.window", "window must contain omega_c strictly inside");
  if (c.kappa > 0.0 && c.spacing > 0.0 && c.spacing > c.kappa / 10.0 * (1.0 + 1e-9))
    add("cavity.spacing", "grid too coarse for loss width (need spacing <= kappa/10)");
  if (c.spacing > 0.0 && c.omega_max > c.omega_min) {
    const std::size_t n = c.mode_count();
    if (n > c.max_modes)
      add("cavity.window", "mode count " + std::to_string(n) + " exceeds cap " +
                               std::to_string(c.max_modes));
  }
  return out;
}

std::vector<Issue> check_inputs(const ElectronicLevels& levels, const CavityModel& cavity) {
  auto out = check_levels(levels);
  auto more = check_cavity(cavity);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::pair<ElectronicLevels, CavityModel> validate_inputs(const ElectronicLevels& levels,
                                                         const CavityModel& cavity) {
  auto issues = check_inputs(levels, cavity);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return {levels, cavity};
}

}  // namespace cavqed
