#pragma once

// Physical constants and the unit conversions used at the ingestion
// boundary. Everything downstream of this header computes in SI;
// spectroscopic units (eV, angstrom, megabarn) exist only in configs,
// CLI flags and CSV headers.

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace envrates {

// CODATA 2018. c, h and e are exact defined values; mu0 is the 2018
// recommended value and eps0 is derived from it so that c^2 eps0 mu0 = 1
// holds to machine precision.
namespace constants {
inline constexpr double speed_of_light = 299792458.0;          // m/s
inline constexpr double planck = 6.62607015e-34;               // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double elementary_charge = 1.602176634e-19;   // C
inline constexpr double mu0 = 1.25663706212e-6;                // H/m
inline constexpr double eps0 =
    1.0 / (mu0 * speed_of_light * speed_of_light);             // F/m
} // namespace constants

/// Photon/transition energy in eV to angular frequency in rad/s.
inline double ev_to_angular_frequency(double energy_ev) {
  if (!(energy_ev > 0.0))
    throw std::domain_error("ev_to_angular_frequency: energy must be > 0 eV");
  return energy_ev * constants::elementary_charge / constants::hbar;
}

inline double angular_frequency_to_ev(double omega) {
  if (!(omega > 0.0))
    throw std::domain_error("angular_frequency_to_ev: omega must be > 0");
  return omega * constants::hbar / constants::elementary_charge;
}

/// Cross section in megabarn (1 Mb = 1e-22 m^2) to m^2.
inline double megabarn_to_m2(double sigma_mb) {
  if (sigma_mb < 0.0)
    throw std::domain_error("megabarn_to_m2: cross section must be >= 0");
  return sigma_mb * 1e-22;
}

inline double m2_to_megabarn(double sigma_m2) {
  if (sigma_m2 < 0.0)
    throw std::domain_error("m2_to_megabarn: cross section must be >= 0");
  return sigma_m2 * 1e22;
}

inline double angstrom_to_m(double x) {
  if (!std::isfinite(x))
    throw std::domain_error("angstrom_to_m: length must be finite");
  return x * 1e-10;
}

inline double m_to_angstrom(double x) {
  if (!std::isfinite(x))
    throw std::domain_error("m_to_angstrom: length must be finite");
  return x * 1e10;
}

/// Transition wavelength lambda = 2 pi c / omega.
inline double wavelength_from_angular_frequency(double omega) {
  if (!(omega > 0.0))
    throw std::domain_error(
        "wavelength_from_angular_frequency: omega must be > 0");
  return 2.0 * std::numbers::pi * constants::speed_of_light / omega;
}

/// Photoionisation radius a_sigma, defined through pi a_sigma^2 = sigma.
inline double sigma_radius(double sigma_m2) {
  if (sigma_m2 < 0.0)
    throw std::domain_error("sigma_radius: cross section must be >= 0");
  return std::sqrt(sigma_m2 / std::numbers::pi);
}

} // namespace envrates
