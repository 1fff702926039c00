#pragma once

// Derived quantities: the rate-ratio matrix in terms of characteristic
// length scales, closed-form surface modification factors and their
// orientation-resolved counterparts, branching ratios, 2-D donor
// position scans, and cavity Q-factor enhancement estimates.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "envrates/greens.hpp"
#include "envrates/rates.hpp"
#include "envrates/scenario_grid.hpp"

namespace envrates {

// ---------------------------------------------------------------------
// Rate-ratio matrix

/// Characteristic length scales of the competing channels. alpha_radius
/// is signed: alpha_volume = sign * alpha_radius^3.
struct LengthScales {
  double wavelength = 0.0;   // lambda_nk = 2 pi c / w_kn, m
  double separation = 0.0;   // atom separation r, m
  double auger_radius = 0.0; // a, m
  double sigma_radius = 0.0; // a_sigma with pi a_sigma^2 = sigma, m
  double alpha_radius = 0.0; // signed a_alpha, m
  double im_alpha_volume = 0.0; // Im(alpha_volume), m^3
};

/// Lower-triangular matrix of rate ratios among
/// {Gamma_s0, Gamma_A0, Gamma_ICD, dGamma_s, dGamma_A}; entry(i, j) =
/// rate_i / rate_j for i >= j. All cells derive from one set of base
/// rate expressions so every multiplicative chain closes exactly.
struct RatioTable {
  static constexpr int size = 5;
  static const std::array<const char *, size> labels;
  std::array<std::array<double, size>, size> entry{};

  [[nodiscard]] double operator()(int i, int j) const {
    return entry[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

RatioTable ratio_table(const LengthScales &scales);

// ---------------------------------------------------------------------
// Surface factors

enum class SurfaceGeometryKind { parallel, perpendicular };

/// Closed-form surface-modified Auger factor
/// 1 - 2 sqrt(pi) Re[r] a^3/dr^3 + 9 pi |r|^2 a^6 / (8 dr^6).
double surface_auger_relative(Complex r_nr, double dr, double auger_radius);

/// Surface-modified ICD factor relative to free space. Isotropic cases
/// use the closed forms (image distance 2 dr + r_ab perpendicular,
/// sqrt(r_ab^2 + 4 dr^2) parallel); M0 / Mpm1 evaluate the
/// orientation-resolved trace pipeline in the nonretarded regime. In
/// the perpendicular geometry dr is the height of the closer atom.
double surface_icd_relative(SurfaceGeometryKind kind,
                            const Orientation &orientation, Complex r_nr,
                            double dr, double r_ab);

// ---------------------------------------------------------------------
// Branching ratio

struct BranchingResult {
  double b = 0.0;         // Gamma_ICD / Gamma_A in the environment
  double b0 = 0.0;        // free-space value
  double b_over_b0 = 1.0; // environment factor, sigma- and gamma-free
  double b0_in_cross_section_units = 0.0; // B0 / (sigma_ICD / sigma_A)
  Validity flags = Validity::none;
};

struct BranchingGeometry {
  SurfaceGeometryKind kind = SurfaceGeometryKind::parallel;
  Orientation orientation = Orientation::isotropic();
  double surface_distance = 0.0; // m; ignored for free space
  double separation = 0.0;       // m
};

/// icd_data.sigma is the ICD (acceptor) cross section, auger_data.sigma
/// the Auger one; both share omega and gamma_free. The donor carries
/// the Auger vacancy and, in the perpendicular geometry, sits closest
/// to the surface. Environments: FreeSpace or Surface.
BranchingResult branching_ratio(const AtomicTransition &icd_data,
                                const AtomicTransition &auger_data,
                                const Environment &env,
                                const BranchingGeometry &geometry);

// ---------------------------------------------------------------------
// Donor-position contour scan

/// Donor scanned over an (x, z) grid with the acceptor fixed; the
/// surface is the z = 0 plane. Output rows hold the branching ratio in
/// cross-section units (with and without the surface) and the
/// environment factor B/B0. Points on or below the surface, or
/// coinciding with the acceptor, are kept in the grid but flagged.
struct ContourSpec {
  Vec3 acceptor{};    // m, z > 0
  double x_min = 0.0, x_max = 0.0; // m
  double z_min = 0.0, z_max = 0.0; // m
  int nx = 2, nz = 2;
  Complex r_nr{0.0, 0.0};
  double auger_radius = 0.0; // m
  Orientation orientation = Orientation::isotropic();
};

SweepGrid contour_scan(const ContourSpec &spec);

// ---------------------------------------------------------------------
// Cavity estimate

struct CavityEstimate {
  double q = 0.0;            // quality factor
  double scale_factor = 0.0; // s = 3 lambda^3 / (4 pi^2 V)
  double b_icd = 0.0;        // w^3 r_ab^3 / (3 c^3)
  double b_a = 0.0;          // 4 sqrt(pi) w^3 a^3 / c^3
  double enhancement_icd = 1.0;   // (1 + s b Q)^2
  double enhancement_auger = 1.0;
  Validity flags = Validity::none;
};

CavityEstimate cavity_estimate(double q, double scale_factor, double omega,
                               double separation, double auger_radius);

} // namespace envrates
