#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cavqed/eigensolve.hpp"
#include "cavqed/hamiltonian.hpp"
#include "cavqed/model.hpp"
#include "cavqed/units.hpp"

namespace cavqed {

enum class Channel { total_absorption, weight };

struct Spectrum {
  std::vector<double> omega;      // eV
  std::vector<double> intensity;  // >= 0
  double scale_factor = 1.0;      // raw values = intensity * scale_factor
  Channel channel = Channel::total_absorption;
  std::string state;              // electronic label for the weight channel
  double gamma = 0.0;             // eV, Lorentzian FWHM
  PrefactorMode mode = PrefactorMode::arbitrary_units;
};

/// Unit-area Lorentzian of full width gamma: (1/2pi) gamma / (x^2 + gamma^2/4).
double lorentzian(double x, double gamma);

/// `points` equally spaced values from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

/// A(w) = sum_l L_gamma(w - w_l) w_l |sum_i C_il (d_i . pol)|^2, normalized to unit peak.
Spectrum absorption_spectrum(const PolaritonModes& modes, const ElectronicLevels& levels,
                             double gamma, const std::vector<double>& omega, const Vec3& polarization,
                             unsigned threads = 0);

/// curve_i(w) = sum_l L_gamma(w - w_l) W_il, normalized to unit peak.
Spectrum weight_spectrum(const PolaritonModes& modes, const ElectronicLevels& levels,
                         std::size_t state, double gamma, const std::vector<double>& omega,
                         unsigned threads = 0);

/// -(w/pi) Im[d^T (z - E - Sigma(z))^-1 d] at z = w + i gamma/2, without
/// diagonalizing. Normalized to unit peak. Throws SolverError on a singular solve.
Spectrum resolvent_spectrum(const CoupledSystem& system, const ElectronicLevels& levels,
                            double gamma, const std::vector<double>& omega, const Vec3& polarization,
                            unsigned threads = 0);

/// Peak rescaled to exactly 1; scale_factor multiplied by the old peak.
/// Throws SolverError for an identically zero spectrum.
Spectrum normalize(Spectrum spectrum);

/// `omega_eV,intensity_norm,scale_factor` with `#` metadata lines first.
void write_spectrum_csv(const Spectrum& spectrum, std::ostream& os,
                        const std::vector<std::pair<std::string, std::string>>& metadata = {});

/// `omega_eV,<label>...` one normalized column per state; scale factors in the header.
void write_weight_spectra_csv(const std::vector<Spectrum>& curves, std::ostream& os,
                              const std::vector<std::pair<std::string, std::string>>& metadata = {});

}  // namespace cavqed
