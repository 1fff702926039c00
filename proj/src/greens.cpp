#include "envrates/greens.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "envrates/units.hpp"

namespace envrates {

using std::numbers::pi;
namespace {
constexpr double c_light = constants::speed_of_light;
constexpr Complex I{0.0, 1.0};
} // namespace

std::vector<std::string> validity_strings(Validity flags) {
  std::vector<std::string> out;
  if (has_flag(flags, Validity::surface_beyond_nonretarded))
    out.emplace_back("surface_beyond_nonretarded");
  if (has_flag(flags, Validity::cavity_below_retarded))
    out.emplace_back("cavity_below_retarded");
  if (has_flag(flags, Validity::cavity_sbq_large))
    out.emplace_back("cavity_sbq_large");
  if (has_flag(flags, Validity::b_factor_large))
    out.emplace_back("b_factor_large");
  if (has_flag(flags, Validity::point_skipped))
    out.emplace_back("point_skipped");
  return out;
}

std::string validity_label(Validity flags) {
  std::string s;
  for (const auto &f : validity_strings(flags)) {
    if (!s.empty())
      s += ';';
    s += f;
  }
  return s;
}

// ---------------------------------------------------------------------

Surface::Surface(const Vec3 &n, double off, Complex r)
    : normal(n), offset(off), r_nr(r) {
  const double len = n.norm();
  if (std::abs(len - 1.0) > 1e-12)
    throw std::domain_error("Surface: normal must be unit length");
}

double Surface::height(const Vec3 &p) const { return p.dot(normal) - offset; }

Vec3 Surface::mirror(const Vec3 &p) const {
  return p - 2.0 * height(p) * normal;
}

Complex Surface::reflection_from_permittivity(Complex eps) {
  if (eps == Complex(-1.0, 0.0))
    throw std::domain_error("Surface: permittivity -1 has no nonretarded "
                            "reflection coefficient (surface-mode pole)");
  return (eps - 1.0) / (eps + 1.0);
}

Complex Surface::permittivity_from_reflection(Complex r_nr) {
  if (r_nr == Complex(1.0, 0.0))
    throw std::domain_error("Surface: r_NR = 1 corresponds to infinite "
                            "permittivity");
  return (1.0 + r_nr) / (1.0 - r_nr);
}

SphericalCavity::SphericalCavity(double r, Complex n)
    : radius(r), wall_index(n) {
  if (!(r > 0.0))
    throw std::domain_error("SphericalCavity: radius must be > 0");
  if (n.imag() < 0.0)
    throw std::domain_error("SphericalCavity: Im(n) must be >= 0 (passive wall)");
}

MediatorAtom::MediatorAtom(Complex av, const Vec3 &pos)
    : alpha_volume(av), position(pos) {
  if (av.imag() < 0.0)
    throw std::domain_error(
        "MediatorAtom: Im(alpha_volume) must be >= 0 (passivity)");
}

// ---------------------------------------------------------------------

ComplexTensor3 g0_free(const Vec3 &r_field, const Vec3 &r_source,
                       double omega) {
  if (!(omega > 0.0))
    throw std::domain_error("g0_free: omega must be > 0");
  const Vec3 rv = r_source - r_field;
  const double r = rv.norm();
  if (r == 0.0)
    throw std::domain_error("g0_free: coincident points; use im_g0_coincident "
                            "or g0_regularized for the loop tensor");

  const Vec3 e = (1.0 / r) * rv;
  const double x = omega * r / c_light;
  const Complex phase = std::exp(I * x);
  const Complex f_iso = 1.0 - I * x - x * x;
  const Complex f_dir = 3.0 - 3.0 * I * x - x * x;
  const Complex pref =
      -c_light * c_light * phase / (4.0 * pi * omega * omega * r * r * r);

  ComplexTensor3 ee = dyadic(e, e);
  ComplexTensor3 g = pref * (f_iso * ComplexTensor3::identity() - f_dir * ee);
  return g;
}

ComplexTensor3 g0_nonretarded(const Vec3 &r_field, const Vec3 &r_source,
                              double omega) {
  if (!(omega > 0.0))
    throw std::domain_error("g0_nonretarded: omega must be > 0");
  const Vec3 rv = r_source - r_field;
  const double r = rv.norm();
  if (r == 0.0)
    throw std::domain_error("g0_nonretarded: coincident points");
  const Vec3 e = (1.0 / r) * rv;
  const double pref =
      -c_light * c_light / (4.0 * pi * omega * omega * r * r * r);
  return Complex(pref) *
         (ComplexTensor3::identity() - Complex(3.0) * dyadic(e, e));
}

ComplexTensor3 im_g0_coincident(double omega) {
  if (!(omega > 0.0))
    throw std::domain_error("im_g0_coincident: omega must be > 0");
  return Complex(omega / (6.0 * pi * c_light)) * ComplexTensor3::identity();
}

ComplexTensor3 g0_regularized(double auger_radius, double omega) {
  if (!(auger_radius > 0.0))
    throw std::domain_error("g0_regularized: Auger radius must be > 0");
  if (!(omega > 0.0))
    throw std::domain_error("g0_regularized: omega must be > 0");
  const double a3 = auger_radius * auger_radius * auger_radius;
  const double pref = -c_light * c_light /
                      (24.0 * std::pow(pi, 1.5) * a3 * omega * omega);
  return Complex(pref) * ComplexTensor3::identity();
}

// ---------------------------------------------------------------------

ComplexTensor3 g1_surface(const Vec3 &r_field, const Vec3 &r_source,
                          const Surface &surface, double omega,
                          Validity *flags) {
  if (!(omega > 0.0))
    throw std::domain_error("g1_surface: omega must be > 0");
  const double h_f = surface.height(r_field);
  const double h_s = surface.height(r_source);
  if (h_f <= 0.0 || h_s <= 0.0)
    throw std::domain_error(
        "g1_surface: both points must lie strictly on the vacuum side");

  if (flags != nullptr &&
      omega * std::max(h_f, h_s) / c_light > 0.1)
    *flags |= Validity::surface_beyond_nonretarded;

  // Field point relative to the mirrored source.
  const Vec3 rho_v = r_field - surface.mirror(r_source);
  const double rho = rho_v.norm();
  const Vec3 e = (1.0 / rho) * rho_v;

  const ComplexTensor3 M =
      ComplexTensor3::identity() -
      Complex(2.0) * dyadic(surface.normal, surface.normal);
  const Complex pref =
      surface.r_nr * c_light * c_light /
      (4.0 * pi * omega * omega * rho * rho * rho);
  return pref *
         ((ComplexTensor3::identity() - Complex(3.0) * dyadic(e, e)) * M);
}

ComplexTensor3 g1_cavity_center(const SphericalCavity &cavity, double omega,
                                Validity *flags) {
  if (!(omega > 0.0))
    throw std::domain_error("g1_cavity_center: omega must be > 0");
  if (!(cavity.radius > 0.0))
    throw std::domain_error("g1_cavity_center: radius must be > 0");
  const Complex n = cavity.wall_index;
  if (n.imag() < 0.0)
    throw std::domain_error("g1_cavity_center: Im(n) must be >= 0");

  const double k0 = omega / c_light;
  const double x = k0 * cavity.radius;
  if (flags != nullptr && x < 10.0)
    *flags |= Validity::cavity_below_retarded;

  const Complex n2 = n * n;
  const Complex numerator =
      -std::exp(I * x) * (x * (n2 - n) + I * (n2 - 1.0));
  const Complex denom =
      6.0 * pi * ((I * x * (n - n2) + n2 - 1.0) * std::cos(x) +
                  I * x * n2 * std::exp(-I * x));

  // Resonance-pole guard; unreachable for passive walls but kept as a
  // hard error rather than returning a garbage tensor.
  const double d_scale =
      6.0 * pi * (1.0 + x) * (1.0 + std::abs(n)) * (1.0 + std::abs(n));
  if (std::abs(denom) < 1e-14 * d_scale)
    throw std::domain_error(
        "g1_cavity_center: resonance pole, denominator vanishes");

  return (k0 * numerator / denom) * ComplexTensor3::identity();
}

ComplexTensor3 g1_mediator(const Vec3 &r_field, const Vec3 &r_source,
                           const MediatorAtom &mediator, double omega,
                           Retardation ret) {
  if (!(omega > 0.0))
    throw std::domain_error("g1_mediator: omega must be > 0");
  if ((r_field - mediator.position).norm() == 0.0 ||
      (r_source - mediator.position).norm() == 0.0)
    throw std::domain_error(
        "g1_mediator: mediator position coincides with an atom");

  const ComplexTensor3 leg_out = bulk_tensor(r_field, mediator.position, omega, ret);
  const ComplexTensor3 leg_in = bulk_tensor(mediator.position, r_source, omega, ret);
  // mu0 w^2 * (4 pi eps0 alpha_volume) = 4 pi w^2 alpha_volume / c^2
  const Complex coupling =
      4.0 * pi * omega * omega * mediator.alpha_volume / (c_light * c_light);
  return coupling * (leg_out * leg_in);
}

// ---------------------------------------------------------------------

ComplexTensor3 bulk_tensor(const Vec3 &r_field, const Vec3 &r_source,
                           double omega, Retardation ret) {
  return ret == Retardation::retarded ? g0_free(r_field, r_source, omega)
                                      : g0_nonretarded(r_field, r_source, omega);
}

ComplexTensor3 scattering_tensor(const Environment &env, const Vec3 &r_field,
                                 const Vec3 &r_source, double omega,
                                 Retardation ret, Validity *flags) {
  return std::visit(
      [&](const auto &e) -> ComplexTensor3 {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, FreeSpace>) {
          (void)e;
          return ComplexTensor3::zero();
        } else if constexpr (std::is_same_v<T, Surface>) {
          return g1_surface(r_field, r_source, e, omega, flags);
        } else if constexpr (std::is_same_v<T, SphericalCavity>) {
          return g1_cavity_center(e, omega, flags);
        } else {
          return g1_mediator(r_field, r_source, e, omega, ret);
        }
      },
      env);
}

ComplexTensor3 total_tensor(const Environment &env, const Vec3 &r_field,
                            const Vec3 &r_source, double omega,
                            Retardation ret, Validity *flags) {
  return bulk_tensor(r_field, r_source, omega, ret) +
         scattering_tensor(env, r_field, r_source, omega, ret, flags);
}

ComplexTensor3 total_loop_tensor(const Environment &env, const Vec3 &r,
                                 double omega, double auger_radius,
                                 Retardation ret, Validity *flags) {
  return g0_regularized(auger_radius, omega) +
         scattering_tensor(env, r, r, omega, ret, flags);
}

} // namespace envrates
