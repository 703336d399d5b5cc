#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cavqed/eigensolve.hpp"
#include "cavqed/observables.hpp"

namespace cavqed {

struct Peak {
  std::size_t index = 0;
  double omega = 0.0;
  double height = 0.0;
  double prominence = 0.0;
};

/// Local maxima whose topographic prominence is at least `min_prominence`
/// times the global maximum, ordered by frequency.
std::vector<Peak> find_peaks(const Spectrum& s, double min_prominence = 0.01);

/// Full width at half of the peak height, with linearly interpolated
/// crossings. nullopt if the curve does not fall to half height on both sides.
std::optional<double> fwhm(const Spectrum& s, const Peak& peak);

/// Depth of the deepest local minimum within +-window of `target`, measured
/// from the lower of its two shoulders (maxima within +-window of the minimum)
/// relative to the global maximum. 0 when there is no minimum.
double dip_depth(const Spectrum& s, double target, double window = 0.003);

/// Electronic weight sum_l w^el_l over the eigenvalues in each peak's basin.
/// Basins are separated at the lowest point between neighbouring peaks and
/// bounded by the spectrum window.
std::vector<double> peak_weights(const Spectrum& s, const std::vector<Peak>& peaks,
                                 const PolaritonModes& modes);

/// Distance between the two tallest peaks; nullopt with fewer than two.
std::optional<double> main_splitting(const std::vector<Peak>& peaks);

}  // namespace cavqed
