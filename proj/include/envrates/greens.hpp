#pragma once

// Dyadic Green's tensors for the supported environments: free space
// (retarded and nonretarded), the Gaussian-regularized loop tensor used
// for autoionisation, a dielectric half-space in the nonretarded
// image-dipole approximation, a spherical cavity evaluated at its
// center, and mediation by a single polarisable atom.
//
// Conventions, fixed once here:
//  * g(r_field, r_source, omega): first argument is the observation
//    point, second the source, matching G(r, r').
//  * All tensors are in SI and carry units of 1/m.
//  * The delta-function contact term of the free-space tensor is
//    excluded; coincident points are served by im_g0_coincident (the
//    finite imaginary part) and g0_regularized (the Gaussian-smeared
//    real part).
//  * Surface normals point from the surface into the vacuum side where
//    the atoms sit. Image construction mirrors the source through the
//    plane and reflects tangential dipole components, so that
//    g1 = +r_NR c^2/(4 pi w^2 rho^3) (I - 3 e(x)e) . M with
//    M = I - 2 n(x)n, rho the field-to-image distance and e its unit
//    vector. This reproduces the closed-form surface-modified rates and
//    the electrostatic limits (normal dipole doubled, tangential dipole
//    cancelled at a perfect mirror).
//  * Validity limits (nonretarded surface evaluation, retarded cavity
//    evaluation) are reported as flags on request, never as errors.

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "envrates/tensor3.hpp"

namespace envrates {

enum class Retardation { retarded, nonretarded };

enum class Validity : unsigned {
  none = 0,
  surface_beyond_nonretarded = 1u << 0, // omega * dr / c > 0.1
  cavity_below_retarded = 1u << 1,      // k0 R < 10
  cavity_sbq_large = 1u << 2,           // s b Q > 10 in the Q-factor estimate
  b_factor_large = 1u << 3,             // b_icd or b_a not << 1
  point_skipped = 1u << 4,              // grid point could not be evaluated
};

constexpr Validity operator|(Validity a, Validity b) {
  return static_cast<Validity>(static_cast<unsigned>(a) |
                               static_cast<unsigned>(b));
}
constexpr Validity &operator|=(Validity &a, Validity b) { return a = a | b; }
constexpr bool has_flag(Validity set, Validity flag) {
  return (static_cast<unsigned>(set) & static_cast<unsigned>(flag)) != 0u;
}

std::vector<std::string> validity_strings(Validity flags);
/// Flags joined with ';', empty string when none (CSV-friendly).
std::string validity_label(Validity flags);

// ---------------------------------------------------------------------
// Environments

struct FreeSpace {};

/// Dielectric half-space in the nonretarded limit. The plane is
/// {x : x.normal = offset}; normal is unit length and points into the
/// vacuum. r_nr = (eps - 1)/(eps + 1).
struct Surface {
  Vec3 normal{0.0, 0.0, 1.0};
  double offset = 0.0;
  Complex r_nr{0.0, 0.0};

  Surface() = default;
  Surface(const Vec3 &n, double off, Complex r);

  /// Signed distance of a point above the plane (positive = vacuum side).
  [[nodiscard]] double height(const Vec3 &p) const;
  /// Mirror image of a point through the plane.
  [[nodiscard]] Vec3 mirror(const Vec3 &p) const;

  static Complex reflection_from_permittivity(Complex eps);
  static Complex permittivity_from_reflection(Complex r_nr);
};

/// Spherical vacuum cavity of radius R in a homogeneous wall of complex
/// refractive index n (Im n >= 0, passive). Tensor known at the center.
struct SphericalCavity {
  double radius = 0.0;
  Complex wall_index{1.0, 0.0};

  SphericalCavity() = default;
  SphericalCavity(double r, Complex n);
};

/// Single mediating atom with isotropic polarisability volume
/// alpha_volume = alpha/(4 pi eps0), in m^3.
struct MediatorAtom {
  Complex alpha_volume{0.0, 0.0};
  Vec3 position{};

  MediatorAtom() = default;
  MediatorAtom(Complex av, const Vec3 &pos);
};

using Environment =
    std::variant<FreeSpace, Surface, SphericalCavity, MediatorAtom>;

// ---------------------------------------------------------------------
// Free-space tensors

/// Full retarded free-space tensor, contact term excluded.
ComplexTensor3 g0_free(const Vec3 &r_field, const Vec3 &r_source,
                       double omega);

/// Nonretarded limit -c^2/(4 pi w^2 r^3) (I - 3 e(x)e); purely real.
ComplexTensor3 g0_nonretarded(const Vec3 &r_field, const Vec3 &r_source,
                              double omega);

/// Imaginary part of the free-space tensor at coincidence,
/// (omega / 6 pi c) I.
ComplexTensor3 im_g0_coincident(double omega);

/// Gaussian-regularized loop tensor -c^2/(24 pi^{3/2} a^3 w^2) I,
/// a = Auger radius.
ComplexTensor3 g0_regularized(double auger_radius, double omega);

// ---------------------------------------------------------------------
// Scattering tensors

ComplexTensor3 g1_surface(const Vec3 &r_field, const Vec3 &r_source,
                          const Surface &surface, double omega,
                          Validity *flags = nullptr);

/// Center-of-cavity scattering tensor (isotropic); valid in the
/// retarded regime k0 R >> 1.
ComplexTensor3 g1_cavity_center(const SphericalCavity &cavity, double omega,
                                Validity *flags = nullptr);

/// mu0 w^2 G0(r_field, r_med) . alpha I . G0(r_med, r_source), with
/// alpha = 4 pi eps0 alpha_volume. Legs are retarded or nonretarded per
/// policy.
ComplexTensor3 g1_mediator(const Vec3 &r_field, const Vec3 &r_source,
                           const MediatorAtom &mediator, double omega,
                           Retardation ret = Retardation::retarded);

// ---------------------------------------------------------------------
// Assembly

/// Free-space part per retardation policy.
ComplexTensor3 bulk_tensor(const Vec3 &r_field, const Vec3 &r_source,
                           double omega, Retardation ret);

/// G1 of the environment (zero for free space). The cavity tensor is
/// position-independent (center formula).
ComplexTensor3 scattering_tensor(const Environment &env, const Vec3 &r_field,
                                 const Vec3 &r_source, double omega,
                                 Retardation ret = Retardation::retarded,
                                 Validity *flags = nullptr);

/// G0 + G1 for distinct points.
ComplexTensor3 total_tensor(const Environment &env, const Vec3 &r_field,
                            const Vec3 &r_source, double omega,
                            Retardation ret = Retardation::retarded,
                            Validity *flags = nullptr);

/// Regularized loop tensor plus the environment's scattering part at
/// coincidence: G~0(a) + G1(r, r).
ComplexTensor3 total_loop_tensor(const Environment &env, const Vec3 &r,
                                 double omega, double auger_radius,
                                 Retardation ret = Retardation::retarded,
                                 Validity *flags = nullptr);

} // namespace envrates
