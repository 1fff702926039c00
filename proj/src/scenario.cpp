#include "envrates/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "envrates/units.hpp"

namespace envrates {

using nlohmann::json;

// ---------------------------------------------------------------------

const std::vector<MaterialEntry> &material_table() {
  static const std::vector<MaterialEntry> table = [] {
    std::vector<MaterialEntry> t;
    const Complex rs[4] = {{-2.0, 0.0}, {0.0, 2.0}, {1.41, 1.41}, {2.0, 0.0}};
    const char *labels[4] = {"r_NR=-2", "r_NR=2i", "r_NR=1.41+1.41i",
                             "r_NR=2"};
    for (int i = 0; i < 4; ++i) {
      MaterialEntry e;
      e.index = i + 1;
      e.label = labels[i];
      e.r_nr = rs[i];
      e.permittivity = Surface::permittivity_from_reflection(e.r_nr);
      Complex n = std::sqrt(e.permittivity);
      if (n.imag() < 0.0)
        n = -n;
      e.refractive_index = n;
      t.push_back(e);
    }
    return t;
  }();
  return table;
}

const MaterialEntry &material(int index) {
  const auto &t = material_table();
  if (index < 1 || index > static_cast<int>(t.size()))
    throw std::domain_error("material: index must be in 1..4");
  return t[static_cast<std::size_t>(index - 1)];
}

// ---------------------------------------------------------------------

AtomicTransition HeNeDataset::icd_transition() const {
  AtomicTransition t;
  t.omega = ev_to_angular_frequency(omega_ev);
  t.gamma_free = gamma_per_s;
  t.sigma = megabarn_to_m2(sigma_icd_mb);
  t.auger_radius = angstrom_to_m(auger_radius_angstrom);
  return t;
}

AtomicTransition HeNeDataset::auger_transition() const {
  AtomicTransition t = icd_transition();
  t.sigma = megabarn_to_m2(sigma_auger_mb);
  return t;
}

double HeNeDataset::separation_m() const {
  return angstrom_to_m(separation_angstrom);
}

double HeNeDataset::auger_radius_m() const {
  return angstrom_to_m(auger_radius_angstrom);
}

const HeNeDataset &hene_dataset() {
  static const HeNeDataset d;
  return d;
}

std::vector<Citation> hene_citations() {
  return {
      {"omega_kn", "40.94 eV", "Jabbari et al., J. Chem. Phys. 152 (2020)"},
      {"sigma_ICD", "9.28 Mb", "Verner et al., At. Data Nucl. Data Tables (1995)"},
      {"sigma_Auger", "0.35 Mb", "N. Sisourat, private communication"},
      {"gamma_nk", "5.65e9 1/s", "Liu et al. (2001)"},
      {"r_ab", "3.01 angstrom", "Jabbari et al., J. Chem. Phys. 152 (2020)"},
      {"auger_radius", "0.457 angstrom",
       "derived from the free-space Auger rate (0.431 angstrom for 23sp+ "
       "in the dimer branching context)"},
  };
}

// ---------------------------------------------------------------------

AtomicTransition Scenario::icd_transition() const {
  AtomicTransition t;
  t.omega = omega;
  t.gamma_free = gamma_free;
  t.sigma = sigma_icd;
  t.auger_radius = auger_radius;
  if (wigner_eckart)
    t.wigner_eckart = *wigner_eckart;
  return t;
}

AtomicTransition Scenario::auger_transition() const {
  AtomicTransition t = icd_transition();
  t.sigma = sigma_auger;
  return t;
}

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &msg) {
  throw std::runtime_error("scenario: " + path + ": " + msg);
}

void reject_unknown_keys(const json &obj, const std::string &path,
                         const std::set<std::string> &allowed) {
  for (const auto &item : obj.items())
    if (allowed.find(item.key()) == allowed.end())
      fail(path + "." + item.key(), "unknown key");
}

const json &require_object(const json &obj, const std::string &path,
                           const std::string &key) {
  const json &v = obj[key];
  if (!v.is_object())
    fail(path + "." + key, "must be an object");
  return v;
}

std::string require_string(const json &obj, const std::string &path,
                           const std::string &key) {
  if (!obj.contains(key))
    fail(path + "." + key, "missing required field");
  if (!obj[key].is_string())
    fail(path + "." + key, "must be a string");
  return obj[key].get<std::string>();
}

double require_number(const json &obj, const std::string &path,
                      const std::string &key) {
  if (!obj.contains(key))
    fail(path + "." + key, "missing required field");
  if (!obj[key].is_number())
    fail(path + "." + key, "must be a number");
  return obj[key].get<double>();
}

double optional_number(const json &obj, const std::string &path,
                       const std::string &key, double fallback) {
  if (!obj.contains(key))
    return fallback;
  if (!obj[key].is_number())
    fail(path + "." + key, "must be a number");
  return obj[key].get<double>();
}

Complex require_complex(const json &obj, const std::string &path,
                        const std::string &key) {
  if (!obj.contains(key))
    fail(path + "." + key, "missing required field");
  const json &v = obj[key];
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number())
    fail(path + "." + key, "must be a [re, im] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

Vec3 require_vec3(const json &obj, const std::string &path,
                  const std::string &key) {
  if (!obj.contains(key))
    fail(path + "." + key, "missing required field");
  const json &v = obj[key];
  if (!v.is_array() || v.size() != 3)
    fail(path + "." + key, "must be an [x, y, z] triple");
  for (int i = 0; i < 3; ++i)
    if (!v[static_cast<std::size_t>(i)].is_number())
      fail(path + "." + key, "must be an [x, y, z] triple of numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

Process parse_process(const std::string &s, const std::string &path) {
  if (s == "spontaneous")
    return Process::spontaneous;
  if (s == "icd")
    return Process::icd;
  if (s == "auger")
    return Process::auger;
  if (s == "branching")
    return Process::branching;
  if (s == "cavity")
    return Process::cavity;
  if (s == "table")
    return Process::table;
  fail(path, "unknown process '" + s + "'");
}

const char *process_name(Process p) {
  switch (p) {
  case Process::spontaneous:
    return "spontaneous";
  case Process::icd:
    return "icd";
  case Process::auger:
    return "auger";
  case Process::branching:
    return "branching";
  case Process::cavity:
    return "cavity";
  case Process::table:
    return "table";
  }
  return "";
}

void parse_transition(const json &t, Scenario &s) {
  reject_unknown_keys(t, "transition",
                      {"omega_ev", "gamma_per_s", "sigma_icd_mb",
                       "sigma_auger_mb", "auger_radius_angstrom",
                       "separation_angstrom", "wigner_eckart"});
  const double omega_ev = require_number(t, "transition", "omega_ev");
  if (!(omega_ev > 0.0))
    fail("transition.omega_ev", "must be > 0");
  s.omega = ev_to_angular_frequency(omega_ev);

  const double gamma = require_number(t, "transition", "gamma_per_s");
  if (!(gamma > 0.0))
    fail("transition.gamma_per_s", "must be > 0");
  s.gamma_free = gamma;

  const double sicd = optional_number(t, "transition", "sigma_icd_mb", 0.0);
  if (sicd < 0.0)
    fail("transition.sigma_icd_mb", "must be >= 0");
  s.sigma_icd = megabarn_to_m2(sicd);

  const double sa = optional_number(t, "transition", "sigma_auger_mb", 0.0);
  if (sa < 0.0)
    fail("transition.sigma_auger_mb", "must be >= 0");
  s.sigma_auger = megabarn_to_m2(sa);

  const double a =
      optional_number(t, "transition", "auger_radius_angstrom", 0.0);
  if (a < 0.0)
    fail("transition.auger_radius_angstrom", "must be >= 0");
  s.auger_radius = angstrom_to_m(a);

  const double rab =
      optional_number(t, "transition", "separation_angstrom", 0.0);
  if (rab < 0.0)
    fail("transition.separation_angstrom", "must be >= 0");
  s.separation = angstrom_to_m(rab);

  if (t.contains("wigner_eckart"))
    s.wigner_eckart = require_number(t, "transition", "wigner_eckart");
}

void parse_environment(const json &e, Scenario &s) {
  reject_unknown_keys(e, "environment",
                      {"type", "material", "r_nr", "q_factor", "scale_factor",
                       "radius_angstrom", "refractive_index",
                       "alpha_volume_angstrom3", "position_angstrom"});
  const std::string type = require_string(e, "environment", "type");

  if (type == "free_space") {
    s.environment = FreeSpace{};
  } else if (type == "surface") {
    Complex r_nr;
    if (e.contains("material")) {
      if (e.contains("r_nr"))
        fail("environment", "give either material or r_nr, not both");
      if (!e["material"].is_number_integer())
        fail("environment.material", "must be an integer 1..4");
      const int idx = e["material"].get<int>();
      if (idx < 1 || idx > 4)
        fail("environment.material", "must be in 1..4");
      r_nr = material(idx).r_nr;
    } else {
      r_nr = require_complex(e, "environment", "r_nr");
    }
    s.environment = Surface({0.0, 0.0, 1.0}, 0.0, r_nr);
  } else if (type == "cavity") {
    CavityQS qs;
    qs.q_factor = optional_number(e, "environment", "q_factor", 0.0);
    qs.scale_factor = optional_number(e, "environment", "scale_factor", 0.0);
    if (qs.q_factor > 0.0 && qs.scale_factor > 0.0)
      s.cavity_qs = qs;
    else if (qs.q_factor > 0.0 || qs.scale_factor > 0.0)
      fail("environment", "q_factor and scale_factor must be given together");
    if (e.contains("radius_angstrom")) {
      const double radius =
          require_number(e, "environment", "radius_angstrom");
      if (!(radius > 0.0))
        fail("environment.radius_angstrom", "must be > 0");
      const Complex n = require_complex(e, "environment", "refractive_index");
      if (n.imag() < 0.0)
        fail("environment.refractive_index", "Im(n) must be >= 0");
      s.environment = SphericalCavity(angstrom_to_m(radius), n);
    } else if (!s.cavity_qs) {
      fail("environment", "cavity needs q_factor+scale_factor and/or "
                          "radius_angstrom+refractive_index");
    }
  } else if (type == "mediator") {
    const Complex av =
        require_complex(e, "environment", "alpha_volume_angstrom3");
    if (av.imag() < 0.0)
      fail("environment.alpha_volume_angstrom3", "Im must be >= 0");
    const Vec3 pos_ang = require_vec3(e, "environment", "position_angstrom");
    s.environment = MediatorAtom(av * 1e-30, {angstrom_to_m(pos_ang.x),
                                              angstrom_to_m(pos_ang.y),
                                              angstrom_to_m(pos_ang.z)});
  } else {
    fail("environment.type", "unknown type '" + type + "'");
  }
}

void parse_geometry(const json &g, Scenario &s) {
  reject_unknown_keys(g, "geometry",
                      {"variant", "orientation", "direction",
                       "surface_distance_angstrom"});
  if (g.contains("variant")) {
    const std::string v = require_string(g, "geometry", "variant");
    if (v == "parallel")
      s.variant = SurfaceGeometryKind::parallel;
    else if (v == "perpendicular")
      s.variant = SurfaceGeometryKind::perpendicular;
    else
      fail("geometry.variant", "must be parallel or perpendicular");
  }
  if (g.contains("orientation")) {
    const std::string o = require_string(g, "geometry", "orientation");
    if (o == "iso")
      s.orientation = Orientation::isotropic();
    else if (o == "m0")
      s.orientation = Orientation::m0();
    else if (o == "mpm1")
      s.orientation = Orientation::mpm1();
    else if (o == "fixed")
      s.orientation = Orientation::fixed(require_vec3(g, "geometry", "direction"));
    else
      fail("geometry.orientation", "must be iso, m0, mpm1 or fixed");
  }
  const double dr =
      optional_number(g, "geometry", "surface_distance_angstrom", 0.0);
  if (dr < 0.0)
    fail("geometry.surface_distance_angstrom", "must be >= 0");
  s.surface_distance = angstrom_to_m(dr);
}

void parse_sweep(const json &w, Scenario &s) {
  reject_unknown_keys(
      w, "sweep", {"dr_min_angstrom", "dr_max_angstrom", "steps", "scale"});
  SweepSpec spec;
  spec.dr_min = angstrom_to_m(require_number(w, "sweep", "dr_min_angstrom"));
  spec.dr_max = angstrom_to_m(require_number(w, "sweep", "dr_max_angstrom"));
  if (!(spec.dr_min > 0.0) || !(spec.dr_max > spec.dr_min))
    fail("sweep", "need 0 < dr_min_angstrom < dr_max_angstrom");
  const double steps = require_number(w, "sweep", "steps");
  if (steps < 2.0 || steps != std::floor(steps))
    fail("sweep.steps", "must be an integer >= 2");
  spec.steps = static_cast<int>(steps);
  if (w.contains("scale")) {
    const std::string sc = require_string(w, "sweep", "scale");
    if (sc == "log")
      spec.log_scale = true;
    else if (sc != "linear")
      fail("sweep.scale", "must be linear or log");
  }
  s.sweep = spec;
}

void parse_output(const json &o, Scenario &s) {
  reject_unknown_keys(o, "output", {"path", "format", "columns"});
  if (o.contains("path"))
    s.output.path = require_string(o, "output", "path");
  if (o.contains("format")) {
    const std::string f = require_string(o, "output", "format");
    if (f != "csv" && f != "pretty")
      fail("output.format", "must be csv or pretty");
    s.output.format = f;
  }
  if (o.contains("columns")) {
    const json &cols = o["columns"];
    if (!cols.is_array())
      fail("output.columns", "must be an array of column names");
    for (const auto &c : cols) {
      if (!c.is_string())
        fail("output.columns", "must be an array of column names");
      s.output.columns.push_back(c.get<std::string>());
    }
  }
}

void check_process_requirements(const Scenario &s) {
  const bool needs_sep = s.process == Process::icd ||
                         s.process == Process::branching ||
                         s.process == Process::cavity ||
                         s.process == Process::table;
  const bool needs_a = s.process == Process::auger ||
                       s.process == Process::branching ||
                       s.process == Process::cavity ||
                       s.process == Process::table;
  if (needs_sep && !(s.separation > 0.0))
    fail("transition.separation_angstrom", "required for this process");
  if (needs_a && !(s.auger_radius > 0.0))
    fail("transition.auger_radius_angstrom", "required for this process");
  if ((s.process == Process::icd || s.process == Process::branching ||
       s.process == Process::table) &&
      !(s.sigma_icd > 0.0))
    fail("transition.sigma_icd_mb", "required for this process");
  if ((s.process == Process::auger || s.process == Process::branching) &&
      !(s.sigma_auger > 0.0))
    fail("transition.sigma_auger_mb", "required for this process");
}

} // namespace

Scenario parse_scenario(const std::string &json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &err) {
    throw std::runtime_error(std::string("scenario: JSON parse error: ") +
                             err.what());
  }
  if (!root.is_object())
    fail("(root)", "must be a JSON object");
  reject_unknown_keys(
      root, "(root)",
      {"process", "transition", "environment", "geometry", "sweep", "output"});

  Scenario s;
  s.process = parse_process(require_string(root, "(root)", "process"), "process");

  if (!root.contains("transition"))
    fail("transition", "missing required section");
  parse_transition(require_object(root, "(root)", "transition"), s);

  if (root.contains("environment"))
    parse_environment(require_object(root, "(root)", "environment"), s);
  if (root.contains("geometry"))
    parse_geometry(require_object(root, "(root)", "geometry"), s);
  if (root.contains("sweep"))
    parse_sweep(require_object(root, "(root)", "sweep"), s);
  if (root.contains("output"))
    parse_output(require_object(root, "(root)", "output"), s);

  check_process_requirements(s);
  return s;
}

Scenario load_scenario(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("scenario: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario &s) {
  json root;
  root["process"] = process_name(s.process);

  json t;
  t["omega_ev"] = angular_frequency_to_ev(s.omega);
  t["gamma_per_s"] = s.gamma_free;
  if (s.sigma_icd > 0.0)
    t["sigma_icd_mb"] = m2_to_megabarn(s.sigma_icd);
  if (s.sigma_auger > 0.0)
    t["sigma_auger_mb"] = m2_to_megabarn(s.sigma_auger);
  if (s.auger_radius > 0.0)
    t["auger_radius_angstrom"] = m_to_angstrom(s.auger_radius);
  if (s.separation > 0.0)
    t["separation_angstrom"] = m_to_angstrom(s.separation);
  if (s.wigner_eckart)
    t["wigner_eckart"] = *s.wigner_eckart;
  root["transition"] = t;

  json e;
  if (std::holds_alternative<FreeSpace>(s.environment)) {
    e["type"] = "free_space";
  } else if (const auto *surf = std::get_if<Surface>(&s.environment)) {
    e["type"] = "surface";
    e["r_nr"] = {surf->r_nr.real(), surf->r_nr.imag()};
  } else if (const auto *cav = std::get_if<SphericalCavity>(&s.environment)) {
    e["type"] = "cavity";
    e["radius_angstrom"] = m_to_angstrom(cav->radius);
    e["refractive_index"] = {cav->wall_index.real(), cav->wall_index.imag()};
  } else if (const auto *med = std::get_if<MediatorAtom>(&s.environment)) {
    e["type"] = "mediator";
    e["alpha_volume_angstrom3"] = {med->alpha_volume.real() * 1e30,
                                   med->alpha_volume.imag() * 1e30};
    e["position_angstrom"] = {m_to_angstrom(med->position.x),
                              m_to_angstrom(med->position.y),
                              m_to_angstrom(med->position.z)};
  }
  if (s.cavity_qs) {
    e["type"] = "cavity";
    e["q_factor"] = s.cavity_qs->q_factor;
    e["scale_factor"] = s.cavity_qs->scale_factor;
  }
  root["environment"] = e;

  json g;
  g["variant"] = s.variant == SurfaceGeometryKind::parallel ? "parallel"
                                                            : "perpendicular";
  switch (s.orientation.kind) {
  case Orientation::Kind::isotropic:
    g["orientation"] = "iso";
    break;
  case Orientation::Kind::m0:
    g["orientation"] = "m0";
    break;
  case Orientation::Kind::mpm1:
    g["orientation"] = "mpm1";
    break;
  case Orientation::Kind::fixed:
    g["orientation"] = "fixed";
    g["direction"] = {s.orientation.direction.x, s.orientation.direction.y,
                      s.orientation.direction.z};
    break;
  }
  if (s.surface_distance > 0.0)
    g["surface_distance_angstrom"] = m_to_angstrom(s.surface_distance);
  root["geometry"] = g;

  if (s.sweep) {
    json w;
    w["dr_min_angstrom"] = m_to_angstrom(s.sweep->dr_min);
    w["dr_max_angstrom"] = m_to_angstrom(s.sweep->dr_max);
    w["steps"] = s.sweep->steps;
    w["scale"] = s.sweep->log_scale ? "log" : "linear";
    root["sweep"] = w;
  }

  json o;
  if (!s.output.path.empty())
    o["path"] = s.output.path;
  o["format"] = s.output.format;
  if (!s.output.columns.empty())
    o["columns"] = s.output.columns;
  root["output"] = o;

  return root.dump(2) + "\n";
}

Scenario hene_scenario() {
  const HeNeDataset &d = hene_dataset();
  Scenario s;
  s.process = Process::branching;
  s.omega = ev_to_angular_frequency(d.omega_ev);
  s.gamma_free = d.gamma_per_s;
  s.sigma_icd = megabarn_to_m2(d.sigma_icd_mb);
  s.sigma_auger = megabarn_to_m2(d.sigma_auger_mb);
  s.auger_radius = d.auger_radius_m();
  s.separation = d.separation_m();
  s.environment = FreeSpace{};
  s.variant = SurfaceGeometryKind::parallel;
  s.orientation = Orientation::isotropic();
  return s;
}

// ---------------------------------------------------------------------

std::string csv_string(const SweepGrid &grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.columns.size(); ++i) {
    if (i > 0)
      out += ',';
    out += grid.columns[i];
  }
  out += ",flags\n";

  char buf[32];
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    const auto &row = grid.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0)
        out += ',';
      std::snprintf(buf, sizeof(buf), "%.9g", row[i]);
      out += buf;
    }
    out += ',';
    if (r < grid.row_flags.size())
      out += grid.row_flags[r];
    out += '\n';
  }
  return out;
}

SweepGrid select_columns(const SweepGrid &grid,
                         const std::vector<std::string> &columns) {
  SweepGrid out;
  out.columns = columns;
  out.row_flags = grid.row_flags;
  std::vector<std::size_t> idx;
  for (const auto &name : columns) {
    const auto it =
        std::find(grid.columns.begin(), grid.columns.end(), name);
    if (it == grid.columns.end())
      throw std::runtime_error("select_columns: unknown column '" + name +
                               "'");
    idx.push_back(static_cast<std::size_t>(it - grid.columns.begin()));
  }
  for (const auto &row : grid.rows) {
    std::vector<double> r;
    r.reserve(idx.size());
    for (const std::size_t i : idx)
      r.push_back(row[i]);
    out.rows.push_back(std::move(r));
  }
  return out;
}

void write_csv(const SweepGrid &grid, const std::vector<std::string> &columns,
               const std::string &path) {
  write_csv(select_columns(grid, columns), path);
}

void write_csv(const SweepGrid &grid, const std::string &path) {
  for (const auto &row : grid.rows)
    if (row.size() != grid.columns.size())
      throw std::runtime_error("write_csv: row width mismatch");

  // Atomic: write a sibling temp file, then rename over the target.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
      throw std::runtime_error("write_csv: cannot open '" + tmp + "'");
    out << csv_string(grid);
    if (!out)
      throw std::runtime_error("write_csv: write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw std::runtime_error("write_csv: rename to '" + path +
                             "' failed: " + ec.message());
}

} // namespace envrates
