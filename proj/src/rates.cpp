#include "envrates/rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "envrates/units.hpp"

namespace envrates {

using std::numbers::pi;
namespace {
constexpr double c_light = constants::speed_of_light;

void require_transition(const AtomicTransition &d, bool needs_sigma,
                        bool needs_auger_radius) {
  if (!(d.omega > 0.0))
    throw std::domain_error("AtomicTransition: omega must be > 0");
  if (!(d.gamma_free > 0.0))
    throw std::domain_error("AtomicTransition: gamma_free must be > 0");
  if (needs_sigma && d.sigma < 0.0)
    throw std::domain_error("AtomicTransition: sigma must be >= 0");
  if (needs_auger_radius && !(d.auger_radius > 0.0))
    throw std::domain_error("AtomicTransition: auger_radius must be > 0");
}

/// Orientation contraction C(A, B) such that the rate functional is
/// prefactor * gamma * sigma * Re C(G, G) with
///   isotropic: 2 pi   Tr[A B+]
///   fixed u:   6 pi   u.(A B+).u
///   m0:        fixed with u = separation axis
///   mpm1:      3 pi   (Tr[A B+] - e.(A B+).e)
/// C is bilinear, so bulk / cross / scattering decompose exactly.
struct OrientationContraction {
  Orientation::Kind kind;
  Vec3 axis; // fixed direction or quantization axis

  [[nodiscard]] double prefactor() const {
    switch (kind) {
    case Orientation::Kind::isotropic:
      return 2.0 * pi;
    case Orientation::Kind::fixed:
    case Orientation::Kind::m0:
      return 6.0 * pi;
    case Orientation::Kind::mpm1:
      return 3.0 * pi;
    }
    return 0.0;
  }

  [[nodiscard]] Complex operator()(const ComplexTensor3 &a,
                                   const ComplexTensor3 &b) const {
    const ComplexTensor3 h = a * b.adjoint();
    switch (kind) {
    case Orientation::Kind::isotropic:
      return h.trace();
    case Orientation::Kind::fixed:
    case Orientation::Kind::m0:
      return quadratic_form(axis, h, axis);
    case Orientation::Kind::mpm1:
      return h.trace() - quadratic_form(axis, h, axis);
    }
    return 0.0;
  }
};

OrientationContraction make_contraction(const Orientation &o,
                                        const Vec3 &separation_axis) {
  OrientationContraction c{o.kind, o.direction};
  if (o.kind == Orientation::Kind::m0 || o.kind == Orientation::Kind::mpm1)
    c.axis = separation_axis;
  return c;
}

RateResult assemble_trace_rate(double coupling,
                               const OrientationContraction &contract,
                               const ComplexTensor3 &g0,
                               const ComplexTensor3 &g1, Validity flags) {
  RateResult r;
  r.flags = flags;
  if (coupling == 0.0)
    return r; // zero channel strength, relative factor stays 1
  r.bulk = coupling * contract(g0, g0).real();
  r.cross = coupling * 2.0 * (contract(g0, g1)).real();
  r.scattering = coupling * contract(g1, g1).real();
  r.absolute = r.bulk + r.cross + r.scattering;
  if (!(r.bulk > 0.0))
    throw std::domain_error("rate: vanishing free-space reference");
  r.relative = r.absolute / r.bulk;
  return r;
}
} // namespace

RateResult spontaneous_rate(const AtomicTransition &data,
                            const Environment &env, const Vec3 &position,
                            const Orientation &orientation, Retardation ret) {
  require_transition(data, false, false);
  if (orientation.kind == Orientation::Kind::m0 ||
      orientation.kind == Orientation::Kind::mpm1)
    throw std::invalid_argument(
        "spontaneous_rate: M projections need a separation axis; use "
        "isotropic or fixed orientation");

  Validity flags = Validity::none;
  const ComplexTensor3 g1 =
      scattering_tensor(env, position, position, data.omega, ret, &flags);

  // Im G0(r, r) = w/(6 pi c) I; the relative factor uses it in closed
  // form so the free-space result is exactly gamma.
  const double im_g0_diag = data.omega / (6.0 * pi * c_light);
  double rel = 1.0;
  if (orientation.kind == Orientation::Kind::isotropic) {
    rel += g1.imag_part().trace().real() / (3.0 * im_g0_diag);
  } else {
    rel += quadratic_form(orientation.direction, g1.imag_part(),
                          orientation.direction)
               .real() /
           im_g0_diag;
  }

  RateResult r;
  r.bulk = data.gamma_free;
  r.scattering = data.gamma_free * (rel - 1.0);
  r.cross = 0.0; // the environment enters linearly here
  r.absolute = r.bulk + r.scattering;
  r.relative = rel;
  r.flags = flags;
  return r;
}

RateResult icd_rate(const AtomicTransition &data, const Environment &env,
                    const Vec3 &donor, const Vec3 &acceptor,
                    const Orientation &orientation, Retardation ret) {
  require_transition(data, true, false);
  const Vec3 sep = acceptor - donor;
  if (sep.norm() == 0.0)
    throw std::domain_error("icd_rate: donor and acceptor coincide");

  Validity flags = Validity::none;
  const ComplexTensor3 g0 = bulk_tensor(donor, acceptor, data.omega, ret);
  const ComplexTensor3 g1 =
      scattering_tensor(env, donor, acceptor, data.omega, ret, &flags);

  const auto contract = make_contraction(orientation, sep.normalized());
  const double coupling =
      contract.prefactor() * data.gamma_free * data.sigma;
  return assemble_trace_rate(coupling, contract, g0, g1, flags);
}

RateResult auger_rate_free(const AtomicTransition &data) {
  require_transition(data, true, true);
  const double a = data.auger_radius;
  const double w = data.omega;
  const double c4 = c_light * c_light * c_light * c_light;
  RateResult r;
  r.bulk = c4 * data.gamma_free * data.sigma /
           (96.0 * pi * pi * std::pow(a, 6) * std::pow(w, 4));
  r.absolute = r.bulk;
  r.relative = 1.0;
  return r;
}

double auger_radius_from_rate(double rate_free, double gamma, double sigma,
                              double omega) {
  if (!(rate_free > 0.0) || !(gamma > 0.0) || !(sigma > 0.0) ||
      !(omega > 0.0))
    throw std::domain_error(
        "auger_radius_from_rate: all inputs must be > 0");
  const double c4 = c_light * c_light * c_light * c_light;
  return std::pow(
      c4 * gamma * sigma / (96.0 * pi * pi * std::pow(omega, 4) * rate_free),
      1.0 / 6.0);
}

namespace {
RateResult auger_trace_rate(const AtomicTransition &data,
                            const Environment &env, const Vec3 &position,
                            Retardation ret, double prefactor) {
  Validity flags = Validity::none;
  const ComplexTensor3 s0 = g0_regularized(data.auger_radius, data.omega);
  const ComplexTensor3 s1 =
      scattering_tensor(env, position, position, data.omega, ret, &flags);

  // Tr[S S*] with S* the plain conjugate; all loop tensors here are
  // symmetric, so this equals the Frobenius norm squared.
  const double coupling = prefactor * data.gamma_free * data.sigma;
  RateResult r;
  r.flags = flags;
  if (coupling == 0.0)
    return r;
  r.bulk = coupling * trace_product(s0, s0.conj()).real();
  r.cross = coupling * (trace_product(s0, s1.conj()).real() +
                        trace_product(s1, s0.conj()).real());
  r.scattering = coupling * trace_product(s1, s1.conj()).real();
  r.absolute = r.bulk + r.cross + r.scattering;
  if (!(r.bulk > 0.0))
    throw std::domain_error("auger rate: vanishing free-space reference");
  r.relative = r.absolute / r.bulk;
  return r;
}
} // namespace

RateResult auger_rate_environment(const AtomicTransition &data,
                                  const Environment &env, const Vec3 &position,
                                  Retardation ret) {
  require_transition(data, true, true);
  return auger_trace_rate(data, env, position, ret, 2.0 * pi);
}

RateResult auger_rate_pure(const AtomicTransition &data, const Environment &env,
                           const Vec3 &position, Retardation ret) {
  require_transition(data, true, true);
  if (!std::isfinite(data.wigner_eckart))
    throw std::domain_error("auger_rate_pure: wigner_eckart factor missing");
  return auger_trace_rate(data, env, position, ret,
                          18.0 * pi * data.wigner_eckart);
}

Complex auger_interference_term(const Vector3C &d_nk, const Vector3C &d_mp,
                                const Vector3C &d_pn, const Vector3C &d_km,
                                const ComplexTensor3 &g_kn,
                                const ComplexTensor3 &g_km_conj,
                                double omega_kn, double omega_km) {
  const double pref = -2.0 * pi * constants::mu0 * constants::mu0 /
                      (constants::hbar * constants::hbar) * omega_kn *
                      omega_kn * omega_km * omega_km;
  return pref * frobenius4(d_nk, d_mp, d_pn, d_km, g_kn, g_km_conj);
}

} // namespace envrates
