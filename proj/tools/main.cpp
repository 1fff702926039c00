// Command-line front end: single-point rates, surface-distance sweeps,
// donor-position contour scans, cavity estimates, the rate-ratio table,
// the reference material list, and a He-Ne dimer summary.
//
// Exit codes: 0 success, 1 usage error, 2 physics/data error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "envrates/analysis.hpp"
#include "envrates/greens.hpp"
#include "envrates/rates.hpp"
#include "envrates/scenario.hpp"
#include "envrates/units.hpp"

namespace {

using namespace envrates;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v + 0.0); // flush -0 to 0
  return buf;
}

std::string fmt(Complex v) {
  std::string s = fmt(v.real());
  s += v.imag() < 0.0 ? "-" : "+";
  s += fmt(std::abs(v.imag()));
  s += "i";
  return s;
}

void write_text_atomic(const std::string &path, const std::string &content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot open '" + tmp + "'");
    out << content;
    if (!out)
      throw std::runtime_error("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw std::runtime_error("rename to '" + path + "' failed: " + ec.message());
}

/// Send to --output (atomically) when given, else stdout.
void emit(const std::string &output_path, const std::string &content) {
  if (output_path.empty())
    std::cout << content;
  else
    write_text_atomic(output_path, content);
}

void emit_grid(const OutputSpec &out, const SweepGrid &grid) {
  const SweepGrid selected =
      out.columns.empty() ? grid : select_columns(grid, out.columns);
  if (out.path.empty())
    std::cout << csv_string(selected);
  else
    write_csv(selected, out.path);
}

struct CommonFlags {
  std::string config_path;
  std::string output_path;
  std::string format; // "", "csv", "pretty"
  int material = 0;
  std::string rnr_text; // "RE,IM"
  std::string geometry;
  std::string orientation;
  double dr_angstrom = 0.0;
  double rab_angstrom = 0.0;
};

void add_common(CLI::App *cmd, CommonFlags &f, bool with_surface_flags) {
  cmd->add_option("--config", f.config_path, "scenario JSON file");
  cmd->add_option("--output", f.output_path, "output file (written atomically)");
  cmd->add_option("--format", f.format, "csv or pretty")
      ->check(CLI::IsMember({"csv", "pretty"}));
  if (with_surface_flags) {
    cmd->add_option("--material", f.material,
                    "reference material index (1..4)")
        ->check(CLI::Range(1, 4));
    cmd->add_option("--rnr", f.rnr_text,
                    "nonretarded reflection coefficient RE,IM");
    cmd->add_option("--geometry", f.geometry, "parallel or perpendicular")
        ->check(CLI::IsMember({"parallel", "perpendicular"}));
    cmd->add_option("--orientation", f.orientation, "iso, m0 or mpm1")
        ->check(CLI::IsMember({"iso", "m0", "mpm1"}));
    cmd->add_option("--dr", f.dr_angstrom, "surface distance (angstrom)");
    cmd->add_option("--rab", f.rab_angstrom,
                    "donor-acceptor separation (angstrom)");
  }
}

Complex parse_rnr(const std::string &text) {
  double re = 0.0, im = 0.0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &extra) != 2)
    throw CLI::ValidationError("--rnr", "expected RE,IM");
  return {re, im};
}

/// Config (or the built-in He-Ne data) with flag overrides applied.
Scenario resolve_scenario(const CommonFlags &f) {
  Scenario s = f.config_path.empty() ? hene_scenario()
                                     : load_scenario(f.config_path);
  if (f.material > 0 && !f.rnr_text.empty())
    throw CLI::ValidationError("--material", "conflicts with --rnr");
  if (f.material > 0)
    s.environment = Surface({0.0, 0.0, 1.0}, 0.0, material(f.material).r_nr);
  else if (!f.rnr_text.empty())
    s.environment = Surface({0.0, 0.0, 1.0}, 0.0, parse_rnr(f.rnr_text));
  if (!f.geometry.empty())
    s.variant = f.geometry == "parallel" ? SurfaceGeometryKind::parallel
                                         : SurfaceGeometryKind::perpendicular;
  if (!f.orientation.empty()) {
    if (f.orientation == "iso")
      s.orientation = Orientation::isotropic();
    else if (f.orientation == "m0")
      s.orientation = Orientation::m0();
    else
      s.orientation = Orientation::mpm1();
  }
  if (f.dr_angstrom > 0.0)
    s.surface_distance = angstrom_to_m(f.dr_angstrom);
  if (f.rab_angstrom > 0.0)
    s.separation = angstrom_to_m(f.rab_angstrom);
  if (!f.output_path.empty())
    s.output.path = f.output_path;
  if (!f.format.empty())
    s.output.format = f.format;
  return s;
}

/// Donor/acceptor placement. The donor carries the Auger vacancy; with
/// a surface it sits at the configured distance above the plane, in
/// any other environment it sits at the origin (mediator positions are
/// relative to it, the cavity tensor holds at the center).
struct Placement {
  Vec3 donor;
  Vec3 acceptor;
};

Placement place_atoms(const Scenario &s) {
  const bool surface = std::holds_alternative<Surface>(s.environment);
  const double dr = surface ? s.surface_distance : 0.0;
  if (surface && !(dr > 0.0))
    throw std::domain_error("geometry.surface_distance_angstrom must be > 0 "
                            "for a surface environment");
  Placement p;
  p.donor = {0.0, 0.0, dr};
  p.acceptor = s.variant == SurfaceGeometryKind::parallel
                   ? Vec3{s.separation, 0.0, dr}
                   : Vec3{0.0, 0.0, dr + s.separation};
  return p;
}

std::string rate_report(const char *name, const RateResult &r) {
  std::ostringstream out;
  out << "process: " << name << "\n"
      << "  absolute rate      = " << fmt(r.absolute) << " 1/s\n"
      << "  free-space rate    = " << fmt(r.bulk) << " 1/s\n"
      << "  relative factor    = " << fmt(r.relative) << " (dimensionless)\n"
      << "  decomposition      = bulk " << fmt(r.bulk) << " + cross "
      << fmt(r.cross) << " + scattering " << fmt(r.scattering) << " 1/s\n"
      << "  flags              = "
      << (validity_label(r.flags).empty() ? "(none)" : validity_label(r.flags))
      << "\n";
  return out.str();
}

SweepGrid rate_csv(const RateResult &r) {
  SweepGrid g;
  g.columns = {"absolute_per_s", "free_space_per_s", "relative_dimensionless",
               "bulk_per_s", "cross_per_s", "scattering_per_s"};
  g.add_row({r.absolute, r.bulk, r.relative, r.bulk, r.cross, r.scattering},
            validity_label(r.flags));
  return g;
}

int run_rate(const CommonFlags &flags, const std::string &process_flag) {
  Scenario s = resolve_scenario(flags);
  if (!process_flag.empty()) {
    if (process_flag == "spontaneous")
      s.process = Process::spontaneous;
    else if (process_flag == "icd")
      s.process = Process::icd;
    else if (process_flag == "auger")
      s.process = Process::auger;
    else
      throw CLI::ValidationError("--process",
                                 "must be spontaneous, icd or auger");
  }

  RateResult r;
  const char *name = "";
  const Placement p = place_atoms(s);
  switch (s.process) {
  case Process::spontaneous:
    r = spontaneous_rate(s.icd_transition(), s.environment, p.donor);
    name = "spontaneous";
    break;
  case Process::icd:
    if (!(s.separation > 0.0))
      throw std::domain_error("rate: donor-acceptor separation required "
                              "(--rab or transition.separation_angstrom)");
    r = icd_rate(s.icd_transition(), s.environment, p.donor, p.acceptor,
                 s.orientation, Retardation::nonretarded);
    name = "icd";
    break;
  case Process::auger:
    r = auger_rate_environment(s.auger_transition(), s.environment, p.donor,
                               Retardation::nonretarded);
    name = "auger";
    break;
  default:
    throw std::domain_error(
        "rate: process must be spontaneous, icd or auger (use the branching/"
        "cavity/table subcommands otherwise)");
  }

  if (s.output.format == "csv")
    emit_grid(s.output, rate_csv(r));
  else
    emit(s.output.path, rate_report(name, r));
  return 0;
}

int run_sweep(const CommonFlags &flags, double dr_min, double dr_max,
              int steps, bool log_scale) {
  Scenario s = resolve_scenario(flags);
  if (dr_min > 0.0 && dr_max > 0.0) {
    SweepSpec spec;
    spec.dr_min = angstrom_to_m(dr_min);
    spec.dr_max = angstrom_to_m(dr_max);
    spec.steps = steps;
    spec.log_scale = log_scale;
    s.sweep = spec;
  }
  if (!s.sweep)
    throw CLI::ValidationError("--dr-min/--dr-max",
                               "sweep range required (flags or config)");
  if (!(s.sweep->dr_min > 0.0) || !(s.sweep->dr_max > s.sweep->dr_min) ||
      s.sweep->steps < 2)
    throw CLI::ValidationError("--dr-min/--dr-max/--steps",
                               "need 0 < dr-min < dr-max and steps >= 2");
  if (!std::holds_alternative<Surface>(s.environment))
    throw std::domain_error("sweep: requires a surface environment "
                            "(--material or --rnr)");
  if (!(s.separation > 0.0) || !(s.auger_radius > 0.0))
    throw std::domain_error("sweep: separation and Auger radius required");

  const Complex r_nr = std::get<Surface>(s.environment).r_nr;
  SweepGrid grid;
  grid.columns = {"dr_angstrom",
                  "dr_over_rab_dimensionless",
                  "dr_over_a_dimensionless",
                  "icd_relative_dimensionless",
                  "auger_relative_dimensionless",
                  "b_over_b0_dimensionless"};

  const int n = s.sweep->steps;
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    const double dr =
        s.sweep->log_scale
            ? s.sweep->dr_min *
                  std::pow(s.sweep->dr_max / s.sweep->dr_min, t)
            : s.sweep->dr_min + (s.sweep->dr_max - s.sweep->dr_min) * t;
    const double icd_rel = surface_icd_relative(s.variant, s.orientation, r_nr,
                                                dr, s.separation);
    const double auger_rel = surface_auger_relative(r_nr, dr, s.auger_radius);
    Validity v = Validity::none;
    if (s.omega * dr / constants::speed_of_light > 0.1)
      v |= Validity::surface_beyond_nonretarded;
    grid.add_row({m_to_angstrom(dr), dr / s.separation, dr / s.auger_radius,
                  icd_rel, auger_rel, icd_rel / auger_rel},
                 validity_label(v));
  }
  emit_grid(s.output, grid);
  return 0;
}

int run_contour(const CommonFlags &flags, double x_min, double x_max,
                double z_min, double z_max, int nx, int nz,
                double acceptor_dr) {
  Scenario s = resolve_scenario(flags);
  if (!std::holds_alternative<Surface>(s.environment))
    throw std::domain_error("contour: requires a surface environment "
                            "(--material or --rnr)");
  if (!(s.auger_radius > 0.0))
    throw std::domain_error("contour: Auger radius required");

  ContourSpec spec;
  // Default acceptor height: 5 Auger radii above the surface.
  spec.acceptor = {0.0, 0.0,
                   acceptor_dr > 0.0 ? angstrom_to_m(acceptor_dr)
                                     : 5.0 * s.auger_radius};
  spec.r_nr = std::get<Surface>(s.environment).r_nr;
  spec.auger_radius = s.auger_radius;
  spec.orientation = s.orientation;
  spec.nx = nx;
  spec.nz = nz;
  spec.x_min = angstrom_to_m(x_min);
  spec.x_max = angstrom_to_m(x_max);
  spec.z_min = angstrom_to_m(z_min);
  spec.z_max = angstrom_to_m(z_max);
  emit_grid(s.output, contour_scan(spec));
  return 0;
}

int run_cavity(const CommonFlags &flags, double q, double scale) {
  Scenario s = resolve_scenario(flags);
  if (q > 0.0 && scale > 0.0)
    s.cavity_qs = CavityQS{q, scale};
  if (!s.cavity_qs)
    throw CLI::ValidationError("--q/--s",
                               "Q factor and scale factor required");
  const CavityEstimate est =
      cavity_estimate(s.cavity_qs->q_factor, s.cavity_qs->scale_factor,
                      s.omega, s.separation, s.auger_radius);

  if (s.output.format == "csv") {
    SweepGrid g;
    g.columns = {"q_dimensionless",          "scale_factor_dimensionless",
                 "b_icd_dimensionless",      "b_a_dimensionless",
                 "enhancement_icd_dimensionless",
                 "enhancement_auger_dimensionless"};
    g.add_row({est.q, est.scale_factor, est.b_icd, est.b_a,
               est.enhancement_icd, est.enhancement_auger},
              validity_label(est.flags));
    emit_grid(s.output, g);
  } else {
    std::ostringstream out;
    out << "cavity estimate (Q = " << fmt(est.q)
        << ", s = " << fmt(est.scale_factor) << ")\n"
        << "  b_icd              = " << fmt(est.b_icd)
        << " (dimensionless)\n"
        << "  b_a                = " << fmt(est.b_a) << " (dimensionless)\n"
        << "  enhancement (ICD)  = " << fmt(est.enhancement_icd)
        << " (dimensionless)\n"
        << "  enhancement (Auger)= " << fmt(est.enhancement_auger)
        << " (dimensionless)\n"
        << "  flags              = "
        << (validity_label(est.flags).empty() ? "(none)"
                                              : validity_label(est.flags))
        << "\n";
    emit(s.output.path, out.str());
  }
  return 0;
}

int run_table(const CommonFlags &flags, double a_alpha_angstrom,
              double im_alpha_angstrom3) {
  Scenario s = resolve_scenario(flags);
  LengthScales scales;
  scales.wavelength = wavelength_from_angular_frequency(s.omega);
  scales.separation = s.separation;
  scales.auger_radius = s.auger_radius;
  scales.sigma_radius = sigma_radius(s.sigma_icd);
  scales.alpha_radius = angstrom_to_m(a_alpha_angstrom);
  scales.im_alpha_volume = im_alpha_angstrom3 * 1e-30;

  const bool with_mediator =
      scales.alpha_radius != 0.0 && scales.im_alpha_volume > 0.0;
  const int n = with_mediator ? RatioTable::size : 3;

  // Without mediator scales only the first three channels are defined.
  LengthScales eff = scales;
  if (!with_mediator) {
    eff.alpha_radius = angstrom_to_m(0.1);
    eff.im_alpha_volume = 1e-33;
  }
  const RatioTable t = ratio_table(eff);

  if (s.output.format == "csv") {
    std::string out = "numerator,denominator,ratio_dimensionless\n";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        out += RatioTable::labels[static_cast<std::size_t>(i)];
        out += ',';
        out += RatioTable::labels[static_cast<std::size_t>(j)];
        out += ',';
        out += fmt(t(i, j));
        out += '\n';
      }
    emit(s.output.path, out);
  } else {
    std::ostringstream out;
    out << "rate ratios (row / column), lengths: lambda = "
        << fmt(m_to_angstrom(scales.wavelength)) << " angstrom, r = "
        << fmt(m_to_angstrom(scales.separation)) << " angstrom, a = "
        << fmt(m_to_angstrom(scales.auger_radius)) << " angstrom, a_sigma = "
        << fmt(m_to_angstrom(scales.sigma_radius)) << " angstrom\n";
    for (int i = 0; i < n; ++i) {
      out << "  " << RatioTable::labels[static_cast<std::size_t>(i)] << ":";
      for (int j = 0; j <= i; ++j)
        out << " " << RatioTable::labels[static_cast<std::size_t>(j)] << "="
            << fmt(t(i, j));
      out << "\n";
    }
    if (!with_mediator)
      out << "  (pass --a-alpha and --im-alpha for the mediator rows)\n";
    emit(s.output.path, out.str());
  }
  return 0;
}

int run_materials_impl(const CommonFlags &flags) {
  const std::string format = flags.format.empty() ? "csv" : flags.format;
  if (format == "csv") {
    std::string out =
        "index_dimensionless,r_nr_re_dimensionless,r_nr_im_dimensionless,"
        "eps_re_dimensionless,eps_im_dimensionless,"
        "n_re_dimensionless,n_im_dimensionless\n";
    for (const auto &m : material_table()) {
      out += fmt(static_cast<double>(m.index)) + ',' + fmt(m.r_nr.real()) +
             ',' + fmt(m.r_nr.imag()) + ',' + fmt(m.permittivity.real()) +
             ',' + fmt(m.permittivity.imag()) + ',' +
             fmt(m.refractive_index.real()) + ',' +
             fmt(m.refractive_index.imag()) + '\n';
    }
    emit(flags.output_path, out);
  } else {
    std::ostringstream out;
    out << "reference materials (nonretarded reflection coefficients)\n";
    for (const auto &m : material_table())
      out << "  " << m.index << ": r_NR = " << fmt(m.r_nr)
          << ", eps = " << fmt(m.permittivity)
          << ", n = " << fmt(m.refractive_index) << " (dimensionless)\n";
    emit(flags.output_path, out.str());
  }
  return 0;
}

int run_hene(const CommonFlags &flags) {
  const HeNeDataset &d = hene_dataset();
  const AtomicTransition icd_t = d.icd_transition();
  const AtomicTransition auger_t = d.auger_transition();
  const double r_ab = d.separation_m();
  const double a = d.auger_radius_m();

  const RateResult auger0 = auger_rate_free(auger_t);
  // Free-space nonretarded ICD rate, 3 c^4 gamma sigma / (4 pi w^4 r^6).
  const double c4 = std::pow(constants::speed_of_light, 4);
  const double icd0 = 3.0 * c4 * icd_t.gamma_free * icd_t.sigma /
                      (4.0 * std::numbers::pi * std::pow(icd_t.omega, 4) *
                       std::pow(r_ab, 6));
  const double b0 = icd0 / auger0.absolute;
  const double sigma_ratio = icd_t.sigma / auger_t.sigma;

  const CavityEstimate cav = cavity_estimate(1.0, 1.0, icd_t.omega, r_ab, a);

  BranchingGeometry geom;
  geom.kind = SurfaceGeometryKind::parallel;
  geom.orientation = Orientation::mpm1();
  geom.surface_distance = angstrom_to_m(2.0);
  geom.separation = r_ab;
  const Environment surf = Surface({0.0, 0.0, 1.0}, 0.0, material(1).r_nr);
  const BranchingResult br = branching_ratio(icd_t, auger_t, surf, geom);

  std::ostringstream out;
  out << "He-Ne dimer summary (doubly excited helium donor, neon acceptor)\n"
      << "inputs:\n";
  for (const auto &c : hene_citations())
    out << "  " << c.quantity << " = " << c.value << "  [" << c.source
        << "]\n";
  out << "derived:\n"
      << "  r_ab/a                 = " << fmt(r_ab / a)
      << " (dimensionless)\n"
      << "  omega_kn               = " << fmt(icd_t.omega) << " rad/s\n"
      << "  Gamma_A0               = " << fmt(auger0.absolute) << " 1/s\n"
      << "  Gamma_ICD0             = " << fmt(icd0) << " 1/s\n"
      << "  sigma_ICD/sigma_A      = " << fmt(sigma_ratio)
      << " (dimensionless)\n"
      << "  B0                     = " << fmt(b0) << " (dimensionless)\n"
      << "  B0/(sigma_ICD/sigma_A) = " << fmt(b0 / sigma_ratio)
      << " (dimensionless)\n"
      << "  b_icd                  = " << fmt(cav.b_icd)
      << " (dimensionless)\n"
      << "  b_a                    = " << fmt(cav.b_a) << " (dimensionless)\n"
      << "  B/B0 at dr = 2 angstrom (parallel, Mpm1, r_NR = -2) = "
      << fmt(br.b_over_b0) << " (dimensionless)\n";
  emit(flags.output_path, out.str());
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"environment-modified decay rates: spontaneous emission, "
               "interatomic Coulombic decay and Auger decay near surfaces, "
               "mediator atoms and cavities"};
  app.require_subcommand(1);

  CommonFlags rate_flags, sweep_flags, contour_flags, cavity_flags,
      table_flags, materials_flags, hene_flags;

  auto *rate = app.add_subcommand("rate", "single-point rate evaluation");
  std::string process_flag;
  rate->add_option("--process", process_flag, "spontaneous, icd or auger")
      ->check(CLI::IsMember({"spontaneous", "icd", "auger"}));
  add_common(rate, rate_flags, true);

  auto *sweep = app.add_subcommand(
      "sweep", "surface-distance sweep of the relative rates (CSV)");
  double dr_min = 0.0, dr_max = 0.0;
  int steps = 0;
  bool log_scale = false;
  sweep->add_option("--dr-min", dr_min, "first surface distance (angstrom)");
  sweep->add_option("--dr-max", dr_max, "last surface distance (angstrom)");
  sweep->add_option("--steps", steps, "number of points (>= 2)");
  sweep->add_flag("--log", log_scale, "log-spaced distances");
  add_common(sweep, sweep_flags, true);

  auto *contour = app.add_subcommand(
      "contour", "2-D donor-position scan at fixed acceptor (CSV)");
  double x_min = 0.0, x_max = 0.0, z_min = 0.0, z_max = 0.0;
  int nx = 0, nz = 0;
  double acceptor_dr = 0.0;
  contour->add_option("--x-min", x_min, "donor x range start (angstrom)")
      ->required();
  contour->add_option("--x-max", x_max, "donor x range end (angstrom)")
      ->required();
  contour->add_option("--z-min", z_min, "donor height range start (angstrom)")
      ->required();
  contour->add_option("--z-max", z_max, "donor height range end (angstrom)")
      ->required();
  contour->add_option("--nx", nx, "grid points in x")->required();
  contour->add_option("--nz", nz, "grid points in z")->required();
  contour->add_option("--acceptor-dr", acceptor_dr,
                      "acceptor height (angstrom; default 5 Auger radii)");
  add_common(contour, contour_flags, true);

  auto *cavity =
      app.add_subcommand("cavity", "Q-factor cavity enhancement estimate");
  double q = 0.0, scale = 0.0;
  cavity->add_option("--q", q, "cavity quality factor");
  cavity->add_option("--s", scale, "scale factor 3 lambda^3 / (4 pi^2 V)");
  add_common(cavity, cavity_flags, false);

  auto *table =
      app.add_subcommand("table", "rate-ratio matrix from length scales");
  double a_alpha = 0.0, im_alpha = 0.0;
  table->add_option("--a-alpha", a_alpha,
                    "signed polarisability radius (angstrom)");
  table->add_option("--im-alpha", im_alpha,
                    "Im of the polarisability volume (angstrom^3)");
  add_common(table, table_flags, false);

  auto *materials =
      app.add_subcommand("materials", "reference material table");
  add_common(materials, materials_flags, false);

  auto *hene = app.add_subcommand("hene", "He-Ne dimer summary");
  add_common(hene, hene_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) { // --help
      return app.exit(e);
    }
    app.exit(e);
    return 1;
  }

  try {
    if (rate->parsed())
      return run_rate(rate_flags, process_flag);
    if (sweep->parsed())
      return run_sweep(sweep_flags, dr_min, dr_max, steps == 0 ? 2 : steps,
                       log_scale);
    if (contour->parsed())
      return run_contour(contour_flags, x_min, x_max, z_min, z_max, nx, nz,
                         acceptor_dr);
    if (cavity->parsed())
      return run_cavity(cavity_flags, q, scale);
    if (table->parsed())
      return run_table(table_flags, a_alpha, im_alpha);
    if (materials->parsed())
      return run_materials_impl(materials_flags);
    if (hene->parsed())
      return run_hene(hene_flags);
  } catch (const CLI::ValidationError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
