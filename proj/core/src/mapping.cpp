#include "cavqed/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cavqed {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

LinearMapping::LinearMapping(double scale, double offset) : scale_(scale), offset_(offset) {
  if (!std::isfinite(scale) || scale == 0.0 || !std::isfinite(offset))
    throw ValidationError("mapping.scale", "linear mapping needs a finite nonzero scale");
}

std::string LinearMapping::id() const {
  return "linear(scale=" + fmt(scale_) + ",offset=" + fmt(offset_) + ")";
}

ArctanStretch::ArctanStretch(double center, double width) : center_(center), width_(width) {
  if (!std::isfinite(center) || !(width > 0.0) || !std::isfinite(width))
    throw ValidationError("mapping.focus_width", "arctan stretch needs a positive width");
}

double ArctanStretch::omega(double x) const { return center_ + width_ * std::tan(x); }

double ArctanStretch::density(double x) const {
  const double t = std::tan(x);
  return width_ * (1.0 + t * t);
}

double ArctanStretch::inverse(double w) const { return std::atan((w - center_) / width_); }

std::string ArctanStretch::id() const {
  return "arctan(center=" + fmt(center_) + ",width=" + fmt(width_) + ")";
}

TabulatedMapping::TabulatedMapping(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw ValidationError("mapping.table", "need at least two knots");
  for (const auto& [x, w] : knots) {
    big_.push_back(x);
    small_.push_back(w);
  }
  const bool increasing = small_[1] > small_[0];
  for (std::size_t i = 1; i < big_.size(); ++i) {
    if (!(big_[i] > big_[i - 1]))
      throw ValidationError("mapping.table", "Omega knots must be strictly increasing");
    const bool up = small_[i] > small_[i - 1];
    const bool down = small_[i] < small_[i - 1];
    if ((increasing && !up) || (!increasing && !down))
      throw ValidationError("mapping.table", "mapping is not strictly monotone");
  }
}

std::size_t TabulatedMapping::segment(double x) const {
  if (x < big_.front() || x > big_.back())
    throw ValidationError("mapping.table", "Omega " + fmt(x) + " outside tabulated range");
  auto it = std::upper_bound(big_.begin(), big_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - big_.begin());
  if (i == 0) i = 1;
  if (i >= big_.size()) i = big_.size() - 1;
  return i - 1;
}

double TabulatedMapping::omega(double x) const {
  const std::size_t i = segment(x);
  const double t = (x - big_[i]) / (big_[i + 1] - big_[i]);
  return small_[i] + t * (small_[i + 1] - small_[i]);
}

double TabulatedMapping::density(double x) const {
  const std::size_t i = segment(x);
  return (small_[i + 1] - small_[i]) / (big_[i + 1] - big_[i]);
}

double TabulatedMapping::inverse(double w) const {
  const bool increasing = small_.back() > small_.front();
  const double lo = increasing ? small_.front() : small_.back();
  const double hi = increasing ? small_.back() : small_.front();
  if (w < lo || w > hi)
    throw ValidationError("mapping.table", "omega " + fmt(w) + " outside tabulated image");
  std::size_t a = 0, b = small_.size() - 1;
  while (b - a > 1) {
    const std::size_t m = (a + b) / 2;
    const bool left = increasing ? (w < small_[m]) : (w > small_[m]);
    (left ? b : a) = m;
  }
  const double t = (w - small_[a]) / (small_[b] - small_[a]);
  return big_[a] + t * (big_[b] - big_[a]);
}

double spacing_for_mode_count(const PhotonGrid& grid, const FrequencyMapping& mapping,
                              std::size_t count) {
  if (grid.size() < 2 || count < 2)
    throw ValidationError("transform.modes", "need at least two modes");
  const double a = mapping.inverse(grid.modes.front().omega);
  const double b = mapping.inverse(grid.modes.back().omega);
  return std::abs(b - a) / static_cast<double>(count - 1);
}

PhotonGrid transform_grid(const PhotonGrid& grid, const FrequencyMapping& mapping,
                          double new_spacing) {
  if (grid.size() < 2) throw ValidationError("grid", "need at least two source modes");
  if (!(new_spacing > 0.0) || !std::isfinite(new_spacing))
    throw ValidationError("transform.spacing", "new spacing must be positive");

  const double w_first = grid.modes.front().omega;
  const double w_last = grid.modes.back().omega;
  const double x_a = mapping.inverse(w_first);
  const double x_b = mapping.inverse(w_last);
  const double x_lo = std::min(x_a, x_b);
  const double x_hi = std::max(x_a, x_b);
  const auto count = static_cast<std::size_t>(std::floor((x_hi - x_lo) / new_spacing + 1e-9)) + 1;

  // Coupling density lambda_k / sqrt(weight_k) on the source nodes.
  std::vector<double> nodes(grid.size());
  std::vector<Vec3> density(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    nodes[k] = grid[k].omega;
    density[k] = scaled(grid[k].lambda, 1.0 / std::sqrt(grid[k].weight));
  }

  const double tol = 1e-9 * std::max(std::abs(w_first), std::abs(w_last));
  PhotonGrid out;
  out.provenance = "transformed(" + mapping.id() + ")";
  out.modes.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double x = x_lo + static_cast<double>(j) * new_spacing;
    double w = mapping.omega(x);
    const double d = std::abs(mapping.density(x));
    if (!std::isfinite(w) || !std::isfinite(d) || d == 0.0)
      throw ValidationError("transform.mapping", "mapping is not differentiable and monotone");
    if (w <= 0.0)
      throw ValidationError("transform.mapping", "image leaves the positive-frequency domain");
    if (w < w_first - tol || w > w_last + tol)
      throw ValidationError("transform.mapping", "image leaves the source grid span");
    w = std::clamp(w, w_first, w_last);

    auto it = std::upper_bound(nodes.begin(), nodes.end(), w);
    std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
    if (hi == 0) hi = 1;
    if (hi >= nodes.size()) hi = nodes.size() - 1;
    const std::size_t lo = hi - 1;
    const double t = (w - nodes[lo]) / (nodes[hi] - nodes[lo]);
    Vec3 f;
    for (int c = 0; c < 3; ++c) f[c] = density[lo][c] + t * (density[hi][c] - density[lo][c]);

    const double weight = d * new_spacing;
    out.modes.push_back({w, scaled(f, std::sqrt(weight)), weight});
  }

  std::sort(out.modes.begin(), out.modes.end(),
            [](const PhotonMode& a, const PhotonMode& b) { return a.omega < b.omega; });
  for (std::size_t k = 1; k < out.size(); ++k)
    if (!(out[k].omega > out[k - 1].omega))
      throw ValidationError("transform.mapping",
                            "mapping is not strictly monotone at the requested spacing");
  return out;
}

}  // namespace cavqed
