#include "cavqed/features.hpp"

#include <algorithm>
#include <cmath>

namespace cavqed {

std::vector<Peak> find_peaks(const Spectrum& s, double min_prominence) {
  const auto& y = s.intensity;
  const std::size_t n = y.size();
  std::vector<Peak> out;
  if (n < 3) return out;
  const double top = *std::max_element(y.begin(), y.end());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1])) continue;
    // Plateaus count once, at their left edge.
    std::size_t j = i;
    while (j + 1 < n && y[j + 1] == y[i]) ++j;
    if (j + 1 >= n || !(y[j + 1] < y[i])) continue;
    double left = y[i];
    for (std::size_t k = i; k-- > 0;) {
      if (y[k] > y[i]) break;
      left = std::min(left, y[k]);
    }
    double right = y[i];
    for (std::size_t k = j + 1; k < n; ++k) {
      if (y[k] > y[i]) break;
      right = std::min(right, y[k]);
    }
    const double prom = y[i] - std::max(left, right);
    if (prom >= min_prominence * top) out.push_back({i, s.omega[i], y[i], prom});
  }
  return out;
}

std::optional<double> fwhm(const Spectrum& s, const Peak& peak) {
  const auto& x = s.omega;
  const auto& y = s.intensity;
  const double half = 0.5 * peak.height;
  std::optional<double> lo, hi;
  for (std::size_t k = peak.index; k > 0; --k)
    if (y[k - 1] <= half) {
      const double t = (half - y[k - 1]) / (y[k] - y[k - 1]);
      lo = x[k - 1] + t * (x[k] - x[k - 1]);
      break;
    }
  for (std::size_t k = peak.index; k + 1 < y.size(); ++k)
    if (y[k + 1] <= half) {
      const double t = (y[k] - half) / (y[k] - y[k + 1]);
      hi = x[k] + t * (x[k + 1] - x[k]);
      break;
    }
  if (!lo || !hi) return std::nullopt;
  return *hi - *lo;
}

double dip_depth(const Spectrum& s, double target, double window) {
  const auto& x = s.omega;
  const auto& y = s.intensity;
  const std::size_t n = y.size();
  if (n < 3) return 0.0;
  const double top = *std::max_element(y.begin(), y.end());
  if (!(top > 0.0)) return 0.0;
  double best = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::abs(x[i] - target) > window) continue;
    if (!(y[i] < y[i - 1] && y[i] <= y[i + 1])) continue;
    double left = y[i], right = y[i];
    for (std::size_t k = i; k-- > 0 && x[i] - x[k] <= window;) left = std::max(left, y[k]);
    for (std::size_t k = i + 1; k < n && x[k] - x[i] <= window; ++k) right = std::max(right, y[k]);
    best = std::max(best, (std::min(left, right) - y[i]) / top);
  }
  return best;
}

std::vector<double> peak_weights(const Spectrum& s, const std::vector<Peak>& peaks,
                                 const PolaritonModes& modes) {
  std::vector<double> out(peaks.size(), 0.0);
  if (peaks.empty()) return out;
  std::vector<double> edges{s.omega.front()};
  for (std::size_t p = 0; p + 1 < peaks.size(); ++p) {
    std::size_t arg = peaks[p].index;
    for (std::size_t k = peaks[p].index; k <= peaks[p + 1].index; ++k)
      if (s.intensity[k] < s.intensity[arg]) arg = k;
    edges.push_back(s.omega[arg]);
  }
  edges.push_back(s.omega.back());
  for (Eigen::Index l = 0; l < modes.size(); ++l) {
    const double w = modes.eigenvalues[l];
    if (w < edges.front() || w > edges.back()) continue;
    const auto it = std::upper_bound(edges.begin() + 1, edges.end() - 1, w);
    out[static_cast<std::size_t>(it - edges.begin() - 1)] += modes.el_weight[l];
  }
  return out;
}

std::optional<double> main_splitting(const std::vector<Peak>& peaks) {
  if (peaks.size() < 2) return std::nullopt;
  std::vector<Peak> sorted = peaks;
  std::sort(sorted.begin(), sorted.end(), [](const Peak& a, const Peak& b) { return a.height > b.height; });
  return std::abs(sorted[0].omega - sorted[1].omega);
}

}  // namespace cavqed
