#include "envrates/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "envrates/units.hpp"

namespace envrates {

using std::numbers::pi;
namespace {
constexpr double c_light = constants::speed_of_light;
} // namespace

const std::array<const char *, RatioTable::size> RatioTable::labels = {
    "spontaneous", "auger0", "icd0", "delta_spontaneous", "delta_auger"};

RatioTable ratio_table(const LengthScales &s) {
  if (!(s.wavelength > 0.0) || !(s.separation > 0.0) ||
      !(s.auger_radius > 0.0) || !(s.sigma_radius > 0.0))
    throw std::domain_error("ratio_table: lambda, r, a, a_sigma must be > 0");

  const double lam = s.wavelength, r = s.separation, a = s.auger_radius,
               a_sig = s.sigma_radius;
  const double lam4 = std::pow(lam, 4);
  const double a6 = std::pow(a, 6);
  const double r6 = std::pow(r, 6);

  // Base rates for unit gamma. Every cell is a quotient of these, so
  // the multiplicative chains close identically.
  std::array<double, RatioTable::size> rate{};
  rate[0] = 1.0;                                              // Gamma_s0
  rate[1] = lam4 * a_sig * a_sig / (1536.0 * std::pow(pi, 5) * a6); // Gamma_A0
  rate[2] = 0.75 * lam4 * a_sig * a_sig / (16.0 * std::pow(pi, 4) * r6);
  rate[3] = 3.0 * std::pow(lam / (2.0 * pi * r), 3) * s.im_alpha_volume /
            (r * r * r); // dGamma_s
  const double a_alpha_mag = std::abs(s.alpha_radius);
  rate[4] = -std::copysign(1.0, s.alpha_radius) * rate[1] * 24.0 *
            std::sqrt(pi) * a * a * a * std::pow(a_alpha_mag, 3) / r6;

  RatioTable t;
  for (int i = 0; i < RatioTable::size; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (i == j) {
        t.entry[i][j] = 1.0;
        continue;
      }
      if (rate[j] == 0.0)
        throw std::domain_error(std::string("ratio_table: zero denominator ") +
                                RatioTable::labels[j]);
      t.entry[i][j] = rate[i] / rate[j];
    }
  }
  return t;
}

// ---------------------------------------------------------------------

double surface_auger_relative(Complex r_nr, double dr, double auger_radius) {
  if (!(dr > 0.0) || !(auger_radius > 0.0))
    throw std::domain_error(
        "surface_auger_relative: dr and auger_radius must be > 0");
  const double q = std::pow(auger_radius / dr, 3);
  return 1.0 - 2.0 * std::sqrt(pi) * r_nr.real() * q +
         9.0 * pi * std::norm(r_nr) * q * q / 8.0;
}

namespace {
double icd_perpendicular_iso(Complex r_nr, double dr, double r_ab) {
  const double q = std::pow(r_ab / (2.0 * dr + r_ab), 3);
  return 1.0 + 2.0 * r_nr.real() * q / 3.0 + std::norm(r_nr) * q * q;
}

double icd_parallel_iso(Complex r_nr, double dr, double r_ab) {
  // Image distance sqrt(r_ab^2 + 4 dr^2).
  const double t2 = 4.0 * dr * dr / (r_ab * r_ab);
  return 1.0 -
         r_nr.real() * (t2 + 4.0) / (3.0 * std::pow(t2 + 1.0, 2.5)) +
         std::norm(r_nr) / std::pow(t2 + 1.0, 3);
}

/// Trace-pipeline evaluation of the surface factor for a given donor
/// dipole orientation; nonretarded, so any omega with w * scale / c << 1
/// works and the factor is omega-independent.
double icd_surface_trace(SurfaceGeometryKind kind,
                         const Orientation &orientation, Complex r_nr,
                         double dr, double r_ab) {
  const Surface surface({0.0, 0.0, 1.0}, 0.0, r_nr);
  const Vec3 donor{0.0, 0.0, dr};
  const Vec3 acceptor = kind == SurfaceGeometryKind::parallel
                            ? Vec3{r_ab, 0.0, dr}
                            : Vec3{0.0, 0.0, dr + r_ab};
  AtomicTransition probe;
  probe.omega = 1.0; // cancels in the relative factor
  probe.gamma_free = 1.0;
  probe.sigma = 1.0;
  return icd_rate(probe, surface, donor, acceptor, orientation,
                  Retardation::nonretarded)
      .relative;
}
} // namespace

double surface_icd_relative(SurfaceGeometryKind kind,
                            const Orientation &orientation, Complex r_nr,
                            double dr, double r_ab) {
  if (!(dr > 0.0) || !(r_ab > 0.0))
    throw std::domain_error("surface_icd_relative: dr and r_ab must be > 0");
  if (orientation.kind == Orientation::Kind::isotropic)
    return kind == SurfaceGeometryKind::parallel
               ? icd_parallel_iso(r_nr, dr, r_ab)
               : icd_perpendicular_iso(r_nr, dr, r_ab);
  return icd_surface_trace(kind, orientation, r_nr, dr, r_ab);
}

// ---------------------------------------------------------------------

BranchingResult branching_ratio(const AtomicTransition &icd_data,
                                const AtomicTransition &auger_data,
                                const Environment &env,
                                const BranchingGeometry &geometry) {
  if (!(geometry.separation > 0.0))
    throw std::domain_error("branching_ratio: separation must be > 0");
  if (std::holds_alternative<SphericalCavity>(env) ||
      std::holds_alternative<MediatorAtom>(env))
    throw std::invalid_argument(
        "branching_ratio: defined for free-space and surface environments");

  const bool surface = std::holds_alternative<Surface>(env);
  if (surface && !(geometry.surface_distance > 0.0))
    throw std::domain_error("branching_ratio: surface_distance must be > 0");

  // The donor (Auger atom) is placed at the surface distance; in the
  // perpendicular geometry the acceptor sits behind it.
  const double dr = surface ? geometry.surface_distance
                            : 10.0 * geometry.separation; // arbitrary, unused
  const Vec3 donor{0.0, 0.0, dr};
  const Vec3 acceptor = geometry.kind == SurfaceGeometryKind::parallel
                            ? Vec3{geometry.separation, 0.0, dr}
                            : Vec3{0.0, 0.0, dr + geometry.separation};

  const RateResult icd = icd_rate(icd_data, env, donor, acceptor,
                                  geometry.orientation,
                                  Retardation::nonretarded);
  const RateResult auger =
      auger_rate_environment(auger_data, env, donor, Retardation::nonretarded);
  if (!(auger.absolute > 0.0))
    throw std::domain_error("branching_ratio: Auger rate vanished");

  BranchingResult out;
  out.b = icd.absolute / auger.absolute;
  out.b0 = icd.bulk / auger.bulk;
  out.b_over_b0 = icd.relative / auger.relative;
  out.flags = icd.flags | auger.flags;

  // sigma and gamma cancel in B/B0: the ratio of (absolute) ratios must
  // equal the ratio of relative factors to rounding.
  const double via_absolute = out.b / out.b0;
  if (std::abs(via_absolute / out.b_over_b0 - 1.0) > 1e-12)
    throw std::logic_error("branching_ratio: B/B0 failed the sigma/gamma "
                           "cancellation audit");

  if (!(auger_data.sigma > 0.0) || !(icd_data.sigma > 0.0))
    throw std::domain_error(
        "branching_ratio: both cross sections must be > 0");
  out.b0_in_cross_section_units = out.b0 / (icd_data.sigma / auger_data.sigma);
  return out;
}

// ---------------------------------------------------------------------

SweepGrid contour_scan(const ContourSpec &spec) {
  if (spec.nx < 2 || spec.nz < 2)
    throw std::domain_error("contour_scan: grid needs at least 2x2 points");
  if (!(spec.auger_radius > 0.0))
    throw std::domain_error("contour_scan: auger_radius must be > 0");
  if (!(spec.acceptor.z > 0.0))
    throw std::domain_error("contour_scan: acceptor must be above the surface");

  const Surface surface({0.0, 0.0, 1.0}, 0.0, spec.r_nr);
  // Unit gamma and cross sections: the bulk ratio below is then B0 in
  // cross-section units directly (72 pi a^6 / rho^6 when isotropic,
  // twice / half that for the M0 / Mpm1 donor orientations).
  AtomicTransition probe;
  probe.omega = 1.0;
  probe.gamma_free = 1.0;
  probe.sigma = 1.0;
  probe.auger_radius = spec.auger_radius;

  SweepGrid grid;
  grid.columns = {"donor_x_angstrom", "donor_z_angstrom",
                  "b_over_sigma_ratio_dimensionless",
                  "b0_over_sigma_ratio_dimensionless",
                  "b_over_b0_dimensionless"};

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int iz = 0; iz < spec.nz; ++iz) {
    const double z = spec.z_min + (spec.z_max - spec.z_min) * iz / (spec.nz - 1);
    for (int ix = 0; ix < spec.nx; ++ix) {
      const double x =
          spec.x_min + (spec.x_max - spec.x_min) * ix / (spec.nx - 1);
      const Vec3 donor{x, 0.0, z};
      const double xa = m_to_angstrom(x), za = m_to_angstrom(z);
      const double rho = (spec.acceptor - donor).norm();
      if (z <= 0.0 || rho == 0.0) {
        grid.add_row({xa, za, nan, nan, nan},
                     validity_label(Validity::point_skipped));
        continue;
      }
      try {
        const RateResult icd = icd_rate(probe, surface, donor, spec.acceptor,
                                        spec.orientation,
                                        Retardation::nonretarded);
        const RateResult auger = auger_rate_environment(
            probe, surface, donor, Retardation::nonretarded);
        const double b0_sigma = icd.bulk / auger.bulk;
        const double factor = icd.relative / auger.relative;
        grid.add_row({xa, za, b0_sigma * factor, b0_sigma, factor},
                     validity_label(icd.flags | auger.flags));
      } catch (const std::domain_error &) {
        grid.add_row({xa, za, nan, nan, nan},
                     validity_label(Validity::point_skipped));
      }
    }
  }
  return grid;
}

// ---------------------------------------------------------------------

CavityEstimate cavity_estimate(double q, double scale_factor, double omega,
                               double separation, double auger_radius) {
  if (!(q > 0.0) || !(scale_factor > 0.0))
    throw std::domain_error("cavity_estimate: Q and s must be > 0");
  if (!(omega > 0.0) || !(separation > 0.0) || !(auger_radius > 0.0))
    throw std::domain_error(
        "cavity_estimate: omega, separation, auger_radius must be > 0");

  const double k3 = std::pow(omega / c_light, 3);
  CavityEstimate est;
  est.q = q;
  est.scale_factor = scale_factor;
  est.b_icd = k3 * std::pow(separation, 3) / 3.0;
  est.b_a = 4.0 * std::sqrt(pi) * k3 * std::pow(auger_radius, 3);

  if (est.b_icd >= 1.0 || est.b_a >= 1.0)
    est.flags |= Validity::b_factor_large;

  const auto enhancement = [&](double b) {
    const double sbq = scale_factor * b * q;
    if (sbq > 10.0)
      est.flags |= Validity::cavity_sbq_large;
    return 1.0 + 2.0 * sbq + sbq * sbq;
  };
  est.enhancement_icd = enhancement(est.b_icd);
  est.enhancement_auger = enhancement(est.b_a);
  return est;
}

} // namespace envrates
