#pragma once

// Unit conventions used throughout the library:
//   energies and hbar-rates  eV
//   time                     fs
//   transition dipoles       e*Angstrom
//   cavity strength          eV^(1/2)/nm

namespace cavqed {

struct Constants {
  static constexpr double hbar = 0.6582119569;  // eV*fs
  static constexpr double angstrom_per_nm = 10.0;
};

/// How spectra are reported. The absolute absorption prefactor 2 m_e / (3 hbar^2)
/// is never evaluated; spectra are either normalized to unit peak or left in
/// arbitrary units with the scale factor stored alongside.
enum class PrefactorMode { normalized, arbitrary_units };

}  // namespace cavqed
