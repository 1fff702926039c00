#pragma once

// Decay-rate formulas built on the Green's tensors:
//
//   spontaneous   Gamma_s   = 2 pi c gamma / w * Tr Im G(r, r, w)   (isotropic)
//   ICD           Gamma_ICD = 2 pi gamma sigma Tr[G_da . G*_ad]
//   Auger         Gamma_A   = 2 pi gamma sigma Tr[(G~0 + G1)(G~0 + G1)*]
//   Auger (pure)  Gamma     = 18 pi c_nkm gamma sigma Tr[G . G*]
//
// gamma is the free-space spontaneous rate of the donor transition and
// sigma the acceptor photoionisation cross section at the transition
// frequency; both absorb the transition dipole moments and the density
// of final states. Every result reports the absolute rate, the factor
// relative to free space, and the bulk / cross / scattering-squared
// decomposition. Free-space inputs give a relative factor of exactly 1
// by construction.
//
// Orientation handling for ICD: the donor dipole direction u contracts
// the donor-side index of G(r_donor, r_acceptor); the acceptor is
// averaged isotropically, which turns |u.G.e|^2 into (1/3) u.(G G+).u.
// The M0 / Mpm1 cases fix u along, respectively average across, the
// donor-acceptor separation axis (the quantization axis).

#include <complex>
#include <limits>

#include "envrates/greens.hpp"
#include "envrates/tensor3.hpp"

namespace envrates {

struct AtomicTransition {
  double omega = 0.0;       // transition angular frequency w_kn, rad/s
  double gamma_free = 0.0;  // free-space spontaneous rate of n->k, 1/s
  double sigma = 0.0;       // photoionisation cross section at w_kn, m^2
  double auger_radius = 0.0; // Gaussian electron-cloud radius a, m (Auger)
  double wigner_eckart =
      std::numeric_limits<double>::quiet_NaN(); // c_nkm (Auger pure)
};

struct RateResult {
  double absolute = 0.0;   // 1/s
  double relative = 1.0;   // vs free space
  double bulk = 0.0;       // free-space contribution, 1/s
  double cross = 0.0;      // bulk x scattering interference, 1/s
  double scattering = 0.0; // |scattering|^2 contribution, 1/s
  Validity flags = Validity::none;
};

struct Orientation {
  enum class Kind { isotropic, fixed, m0, mpm1 };
  Kind kind = Kind::isotropic;
  Vec3 direction{}; // unit dipole direction for Kind::fixed

  static Orientation isotropic() { return {}; }
  static Orientation fixed(const Vec3 &u) {
    Orientation o;
    o.kind = Kind::fixed;
    o.direction = u.normalized();
    return o;
  }
  /// Dipole along the quantization (separation) axis.
  static Orientation m0() {
    Orientation o;
    o.kind = Kind::m0;
    return o;
  }
  /// Average over the two axes perpendicular to the quantization axis.
  static Orientation mpm1() {
    Orientation o;
    o.kind = Kind::mpm1;
    return o;
  }
};

RateResult spontaneous_rate(const AtomicTransition &data,
                            const Environment &env, const Vec3 &position,
                            const Orientation &orientation = Orientation::isotropic(),
                            Retardation ret = Retardation::retarded);

RateResult icd_rate(const AtomicTransition &data, const Environment &env,
                    const Vec3 &donor, const Vec3 &acceptor,
                    const Orientation &orientation = Orientation::isotropic(),
                    Retardation ret = Retardation::retarded);

/// Free-space Auger rate c^4 gamma sigma / (96 pi^2 a^6 w^4).
RateResult auger_rate_free(const AtomicTransition &data);

/// Inverts the free-space Auger formula for the Auger radius.
double auger_radius_from_rate(double rate_free, double gamma, double sigma,
                              double omega);

RateResult auger_rate_environment(const AtomicTransition &data,
                                  const Environment &env, const Vec3 &position,
                                  Retardation ret = Retardation::retarded);

/// Wigner-Eckart-reduced pure part, 18 pi c_nkm gamma sigma Tr[G G*];
/// requires data.wigner_eckart.
RateResult auger_rate_pure(const AtomicTransition &data, const Environment &env,
                           const Vec3 &position,
                           Retardation ret = Retardation::retarded);

/// One interference contribution between direct and exchange channels,
///   -(2 pi mu0^2 / hbar^2) w_kn^2 w_km^2 D :: [G(w_kn) (x) G*(w_km)]
/// with D = d_nk (x) d_mp (x) d_pn (x) d_km. The caller supplies all
/// four transition dipoles and G* already conjugated, and performs the
/// sum over final states (under which the total is real).
Complex auger_interference_term(const Vector3C &d_nk, const Vector3C &d_mp,
                                const Vector3C &d_pn, const Vector3C &d_km,
                                const ComplexTensor3 &g_kn,
                                const ComplexTensor3 &g_km_conj,
                                double omega_kn, double omega_km);

} // namespace envrates
