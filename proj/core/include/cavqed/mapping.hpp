#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cavqed/discretize.hpp"

namespace cavqed {

/// Monotone change of frequency variable omega(Omega). density() is
/// d omega / d Omega, the mode density that rescales couplings.
class FrequencyMapping {
 public:
  virtual ~FrequencyMapping() = default;
  virtual double omega(double big_omega) const = 0;
  virtual double density(double big_omega) const = 0;
  virtual double inverse(double omega) const = 0;
  virtual std::string id() const = 0;
};

class IdentityMapping final : public FrequencyMapping {
 public:
  double omega(double x) const override { return x; }
  double density(double) const override { return 1.0; }
  double inverse(double w) const override { return w; }
  std::string id() const override { return "identity"; }
};

/// omega = scale * Omega + offset
class LinearMapping final : public FrequencyMapping {
 public:
  LinearMapping(double scale, double offset = 0.0);
  double omega(double x) const override { return scale_ * x + offset_; }
  double density(double) const override { return scale_; }
  double inverse(double w) const override { return (w - offset_) / scale_; }
  std::string id() const override;

 private:
  double scale_;
  double offset_;
};

/// omega = center + width * tan(Omega). Uniform Omega steps concentrate modes
/// within about +-width of center, with spacing growing as (omega-center)^2/width.
class ArctanStretch final : public FrequencyMapping {
 public:
  ArctanStretch(double center, double width);
  double omega(double x) const override;
  double density(double x) const override;
  double inverse(double w) const override;
  std::string id() const override;

 private:
  double center_;
  double width_;
};

/// Piecewise-linear omega(Omega) through tabulated knots. The derivative is the
/// slope of the containing segment. Knots must be strictly monotone in both columns.
class TabulatedMapping final : public FrequencyMapping {
 public:
  explicit TabulatedMapping(std::vector<std::pair<double, double>> knots);
  double omega(double x) const override;
  double density(double x) const override;
  double inverse(double w) const override;
  std::string id() const override { return "tabulated"; }

 private:
  std::size_t segment(double x) const;
  std::vector<double> big_;
  std::vector<double> small_;
};

/// Resample a photon grid on uniform steps new_spacing of the variable Omega.
/// Each new mode sits at omega(Omega_j); its coupling density is interpolated
/// from the source grid and rescaled by sqrt(D(Omega_j) * new_spacing).
PhotonGrid transform_grid(const PhotonGrid& grid, const FrequencyMapping& mapping,
                          double new_spacing);

/// Omega step that yields `count` modes over the source grid's span.
double spacing_for_mode_count(const PhotonGrid& grid, const FrequencyMapping& mapping,
                              std::size_t count);

}  // namespace cavqed
