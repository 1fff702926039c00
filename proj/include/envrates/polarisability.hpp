#pragma once

// Lorentz-oscillator polarisability of a mediating atom,
//   alpha(w) = (2 / 3 hbar) sum_i  w_i |d_i|^2 / (w_i^2 - w^2 - i w g_i),
// with the damping sign fixed by the e^{-i w t} convention of the
// outgoing (e^{+i w r / c}) Green's tensors, so that Im alpha(w) > 0 at
// positive frequency for any positive linewidth.

#include <complex>
#include <stdexcept>
#include <vector>

#include "envrates/tensor3.hpp"
#include "envrates/units.hpp"

namespace envrates {

struct Oscillator {
  double omega_resonance = 0.0;  // rad/s
  double dipole_sq = 0.0;        // |d|^2, (C m)^2
  double linewidth = 0.0;        // rad/s
};

struct OscillatorSet {
  std::vector<Oscillator> oscillators;

  OscillatorSet() = default;
  explicit OscillatorSet(std::vector<Oscillator> osc)
      : oscillators(std::move(osc)) {
    for (const auto &o : oscillators) {
      if (!(o.omega_resonance > 0.0))
        throw std::domain_error("OscillatorSet: resonance must be > 0");
      if (!(o.linewidth > 0.0))
        throw std::domain_error("OscillatorSet: linewidth must be > 0");
      if (o.dipole_sq < 0.0)
        throw std::domain_error("OscillatorSet: |d|^2 must be >= 0");
    }
  }
};

/// Frequency regimes relative to the lowest resonance; the static-like
/// regime (w << w_i) lies outside the rate-comparison discussion and is
/// reported so callers can flag it.
enum class PolarisabilityRegime { static_like, resonant, high_frequency };

/// Complex polarisability in SI (C m^2 / V). Defined for any real
/// frequency; negative arguments give the crossing-symmetric
/// continuation alpha(-w) = alpha(w)*.
inline Complex alpha(const OscillatorSet &set, double omega) {
  if (!std::isfinite(omega))
    throw std::domain_error("alpha: omega must be finite");
  Complex sum = 0.0;
  for (const auto &o : set.oscillators) {
    const Complex denom(o.omega_resonance * o.omega_resonance - omega * omega,
                        -omega * o.linewidth);
    sum += o.omega_resonance * o.dipole_sq / denom;
  }
  return 2.0 / (3.0 * constants::hbar) * sum;
}

/// alpha_volume = alpha / (4 pi eps0), in m^3.
inline Complex polarisability_volume(Complex alpha_si) {
  return alpha_si / (4.0 * std::numbers::pi * constants::eps0);
}

inline Complex alpha_from_volume(Complex alpha_volume) {
  return alpha_volume * 4.0 * std::numbers::pi * constants::eps0;
}

inline PolarisabilityRegime regime(const OscillatorSet &set, double omega) {
  if (set.oscillators.empty())
    throw std::domain_error("regime: empty oscillator set");
  double lo = set.oscillators.front().omega_resonance;
  double hi = lo;
  for (const auto &o : set.oscillators) {
    lo = std::min(lo, o.omega_resonance);
    hi = std::max(hi, o.omega_resonance);
  }
  if (omega < 0.5 * lo)
    return PolarisabilityRegime::static_like;
  if (omega > 2.0 * hi)
    return PolarisabilityRegime::high_frequency;
  return PolarisabilityRegime::resonant;
}

/// Signed length scale a_alpha with alpha_volume = sign * a_alpha^3;
/// display convention, the complex volume is the ground truth.
inline double alpha_length_scale(Complex alpha_volume) {
  const double mag = std::cbrt(std::abs(alpha_volume));
  return alpha_volume.real() < 0.0 ? -mag : mag;
}

} // namespace envrates
