#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <set>

#include "envrates/scenario.hpp"
#include "envrates/units.hpp"

using namespace envrates;

namespace {

std::string data_dir() {
  if (const char *env = std::getenv("ENVRATES_DATA_DIR"))
    return env;
#ifdef ENVRATES_SOURCE_DATA_DIR
  return ENVRATES_SOURCE_DATA_DIR;
#else
  return "data";
#endif
}

bool has_unit_suffix(const std::string &column) {
  static const std::set<std::string> suffixes = {"angstrom", "m", "ev", "mb",
                                                 "dimensionless"};
  if (column.size() > 6 && column.substr(column.size() - 6) == "_per_s")
    return true;
  const auto pos = column.rfind('_');
  return pos != std::string::npos && suffixes.count(column.substr(pos + 1)) > 0;
}

} // namespace

TEST_CASE("material table matches the reference rows") {
  const auto &t = material_table();
  REQUIRE(t.size() == 4);

  // entry 4: eps = -3 implies r_NR = (eps-1)/(eps+1) = 2
  CHECK(t[3].r_nr == Complex(2.0, 0.0));
  CHECK(t[3].permittivity.real() == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(Surface::reflection_from_permittivity(t[3].permittivity).real() ==
        doctest::Approx(2.0).epsilon(1e-12));

  // entry 1: eps = -1/3 is consistent with r_NR = -2
  CHECK(t[0].r_nr == Complex(-2.0, 0.0));
  CHECK(t[0].permittivity.real() == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(Surface::reflection_from_permittivity(t[0].permittivity) -
                 Complex(-2.0, 0.0)) < 1e-12);

  for (const auto &m : t) {
    CHECK(std::abs(m.r_nr) == doctest::Approx(2.0).epsilon(5e-3));
    // r_NR = (eps - 1)/(eps + 1) and n = sqrt(eps) hold for every row
    CHECK(std::abs(Surface::reflection_from_permittivity(m.permittivity) -
                   m.r_nr) < 1e-2);
    CHECK(std::abs(m.refractive_index * m.refractive_index -
                   m.permittivity) < 1e-2);
    CHECK(m.refractive_index.imag() >= 0.0);
  }

  // rounded reference values for eps and n
  CHECK(t[1].permittivity.real() == doctest::Approx(-0.60).epsilon(1e-2));
  CHECK(t[1].permittivity.imag() == doctest::Approx(0.80).epsilon(1e-2));
  CHECK(t[2].permittivity.real() == doctest::Approx(-1.38).epsilon(1e-2));
  CHECK(t[2].permittivity.imag() == doctest::Approx(1.30).epsilon(1e-2));
  CHECK(t[0].refractive_index.imag() == doctest::Approx(0.58).epsilon(1e-2));
  CHECK(t[3].refractive_index.imag() == doctest::Approx(1.73).epsilon(1e-2));

  CHECK_THROWS_AS(material(0), std::domain_error);
  CHECK_THROWS_AS(material(5), std::domain_error);
}

TEST_CASE("bundled scenario equals the embedded He-Ne dataset") {
  const Scenario s = load_scenario(data_dir() + "/hene_surface.json");
  const HeNeDataset &d = hene_dataset();
  CHECK(s.omega ==
        doctest::Approx(ev_to_angular_frequency(d.omega_ev)).epsilon(1e-12));
  CHECK(s.gamma_free == d.gamma_per_s);
  CHECK(s.sigma_icd ==
        doctest::Approx(megabarn_to_m2(d.sigma_icd_mb)).epsilon(1e-15));
  CHECK(s.sigma_auger ==
        doctest::Approx(megabarn_to_m2(d.sigma_auger_mb)).epsilon(1e-15));
  CHECK(s.separation == doctest::Approx(d.separation_m()).epsilon(1e-15));
  CHECK(s.auger_radius == doctest::Approx(d.auger_radius_m()).epsilon(1e-15));
  CHECK(s.process == Process::branching);
  CHECK(std::holds_alternative<Surface>(s.environment));
  CHECK(std::get<Surface>(s.environment).r_nr == Complex(-2.0, 0.0));
  CHECK(s.orientation.kind == Orientation::Kind::mpm1);
  CHECK(s.variant == SurfaceGeometryKind::parallel);
  CHECK(s.surface_distance == doctest::Approx(2e-10).epsilon(1e-15));
}

TEST_CASE("schema errors carry the field path") {
  // missing omega_ev
  const std::string no_omega = R"({
    "process": "auger",
    "transition": {"gamma_per_s": 1e9, "sigma_auger_mb": 1.0,
                   "auger_radius_angstrom": 0.5}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(no_omega),
                       doctest::Contains("transition.omega_ev"),
                       std::runtime_error);

  // negative cross section
  const std::string bad_sigma = R"({
    "process": "icd",
    "transition": {"omega_ev": 40.0, "gamma_per_s": 1e9,
                   "sigma_icd_mb": -1.0, "separation_angstrom": 3.0}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(bad_sigma),
                       doctest::Contains("sigma_icd_mb"), std::runtime_error);

  // unknown keys are rejected with their path
  const std::string unknown = R"({
    "process": "auger",
    "transition": {"omega_ev": 40.0, "gamma_per_s": 1e9,
                   "sigma_auger_mb": 1.0, "auger_radius_angstrom": 0.5,
                   "typo_key": 1}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(unknown),
                       doctest::Contains("transition.typo_key"),
                       std::runtime_error);

  // malformed JSON
  CHECK_THROWS_AS(parse_scenario("{"), std::runtime_error);
  // missing file
  CHECK_THROWS_AS(load_scenario("/nonexistent/path.json"),
                  std::runtime_error);

  // wrong JSON types are schema errors with the field path, not raw
  // library exceptions
  const std::string bad_variant = R"({
    "process": "icd",
    "transition": {"omega_ev": 40.0, "gamma_per_s": 1e9,
                   "sigma_icd_mb": 1.0, "separation_angstrom": 3.0},
    "geometry": {"variant": 42}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(bad_variant),
                       doctest::Contains("geometry.variant"),
                       std::runtime_error);

  const std::string bad_section = R"({
    "process": "icd",
    "transition": 7
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(bad_section),
                       doctest::Contains("transition"), std::runtime_error);

  const std::string bad_rnr = R"({
    "process": "icd",
    "transition": {"omega_ev": 40.0, "gamma_per_s": 1e9,
                   "sigma_icd_mb": 1.0, "separation_angstrom": 3.0},
    "environment": {"type": "surface", "r_nr": [1.0]}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(bad_rnr),
                       doctest::Contains("environment.r_nr"),
                       std::runtime_error);
}

TEST_CASE("scenario round-trips through serialization") {
  const Scenario a = load_scenario(data_dir() + "/hene_surface.json");
  const Scenario b = parse_scenario(serialize_scenario(a));
  CHECK(a.process == b.process);
  CHECK(a.omega == doctest::Approx(b.omega).epsilon(1e-14));
  CHECK(a.gamma_free == doctest::Approx(b.gamma_free).epsilon(1e-14));
  CHECK(a.sigma_icd == doctest::Approx(b.sigma_icd).epsilon(1e-14));
  CHECK(a.sigma_auger == doctest::Approx(b.sigma_auger).epsilon(1e-14));
  CHECK(a.auger_radius == doctest::Approx(b.auger_radius).epsilon(1e-14));
  CHECK(a.separation == doctest::Approx(b.separation).epsilon(1e-14));
  CHECK(a.surface_distance ==
        doctest::Approx(b.surface_distance).epsilon(1e-14));
  CHECK(a.variant == b.variant);
  CHECK(a.orientation.kind == b.orientation.kind);
  CHECK(std::get<Surface>(a.environment).r_nr ==
        std::get<Surface>(b.environment).r_nr);
  CHECK(a.output.format == b.output.format);
}

TEST_CASE("mediator and cavity environments parse") {
  const std::string med = R"({
    "process": "spontaneous",
    "transition": {"omega_ev": 40.0, "gamma_per_s": 1e9},
    "environment": {"type": "mediator",
                    "alpha_volume_angstrom3": [0.1, 0.01],
                    "position_angstrom": [0, 0, 5]}
  })";
  const Scenario sm = parse_scenario(med);
  REQUIRE(std::holds_alternative<MediatorAtom>(sm.environment));
  const auto &ma = std::get<MediatorAtom>(sm.environment);
  CHECK(ma.alpha_volume.real() == doctest::Approx(0.1e-30).epsilon(1e-14));
  CHECK(ma.position.z == doctest::Approx(5e-10).epsilon(1e-14));

  const std::string cav = R"({
    "process": "cavity",
    "transition": {"omega_ev": 40.0, "gamma_per_s": 1e9,
                   "separation_angstrom": 3.0, "auger_radius_angstrom": 0.5},
    "environment": {"type": "cavity", "q_factor": 1e4, "scale_factor": 1.0}
  })";
  const Scenario sc = parse_scenario(cav);
  REQUIRE(sc.cavity_qs.has_value());
  CHECK(sc.cavity_qs->q_factor == 1e4);

  const std::string bad = R"({
    "process": "cavity",
    "transition": {"omega_ev": 40.0, "gamma_per_s": 1e9,
                   "separation_angstrom": 3.0, "auger_radius_angstrom": 0.5},
    "environment": {"type": "cavity", "q_factor": 1e4}
  })";
  CHECK_THROWS_WITH_AS(parse_scenario(bad), doctest::Contains("scale_factor"),
                       std::runtime_error);
}

TEST_CASE("csv writing") {
  SweepGrid grid;
  grid.columns = {"dr_angstrom", "rate_per_s"};

  // empty grid: header only
  CHECK(csv_string(grid) == "dr_angstrom,rate_per_s,flags\n");

  grid.add_row({1.0, 2.5e9});
  grid.add_row({2.0, 3.25e9}, "point_skipped");
  const std::string text = csv_string(grid);
  CHECK(text == "dr_angstrom,rate_per_s,flags\n1,2.5e+09,\n2,3.25e+09,"
                "point_skipped\n");

  // three lines for a two-point sweep
  int lines = 0;
  for (char ch : text)
    if (ch == '\n')
      ++lines;
  CHECK(lines == 3);

  // deterministic file writing
  const std::string path = "/tmp/envrates_csv_test.csv";
  write_csv(grid, path);
  std::ifstream f1(path, std::ios::binary);
  std::string first((std::istreambuf_iterator<char>(f1)),
                    std::istreambuf_iterator<char>());
  write_csv(grid, path);
  std::ifstream f2(path, std::ios::binary);
  std::string second((std::istreambuf_iterator<char>(f2)),
                     std::istreambuf_iterator<char>());
  CHECK(first == second);
  CHECK(first == text);
  std::remove(path.c_str());

  // nine significant digits survive
  SweepGrid g9;
  g9.columns = {"value_dimensionless"};
  g9.add_row({1.23456789012345});
  CHECK(csv_string(g9) == "value_dimensionless,flags\n1.23456789,\n");
}

TEST_CASE("column selection") {
  SweepGrid grid;
  grid.columns = {"a_m", "b_m", "c_m"};
  grid.add_row({1.0, 2.0, 3.0});
  grid.add_row({4.0, 5.0, 6.0}, "point_skipped");

  const SweepGrid sel = select_columns(grid, {"c_m", "a_m"});
  CHECK(sel.columns == std::vector<std::string>{"c_m", "a_m"});
  CHECK(sel.rows[0] == std::vector<double>{3.0, 1.0});
  CHECK(sel.rows[1] == std::vector<double>{6.0, 4.0});
  CHECK(sel.row_flags[1] == "point_skipped");

  CHECK_THROWS_AS(select_columns(grid, {"nope_m"}), std::runtime_error);

  const std::string path = "/tmp/envrates_select_test.csv";
  write_csv(grid, {"b_m"}, path);
  std::ifstream in(path, std::ios::binary);
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  CHECK(text == "b_m,flags\n2,\n5,point_skipped\n");
  std::remove(path.c_str());
}

TEST_CASE("column headers carry unit suffixes") {
  ContourSpec spec;
  spec.acceptor = {0, 0, 2.5e-10};
  spec.r_nr = {-2.0, 0.0};
  spec.auger_radius = 0.5e-10;
  spec.x_min = -1e-10;
  spec.x_max = 1e-10;
  spec.z_min = 1e-10;
  spec.z_max = 2e-10;
  spec.nx = spec.nz = 2;
  const SweepGrid grid = contour_scan(spec);
  for (const auto &col : grid.columns)
    CHECK_MESSAGE(has_unit_suffix(col), "column lacks unit suffix: ", col);
}

TEST_CASE("hene scenario helper mirrors the dataset") {
  const Scenario s = hene_scenario();
  const HeNeDataset &d = hene_dataset();
  CHECK(s.gamma_free == d.gamma_per_s);
  CHECK(s.separation == doctest::Approx(d.separation_m()).epsilon(1e-15));
  CHECK(hene_citations().size() == 6);
  for (const auto &c : hene_citations()) {
    CHECK(!c.quantity.empty());
    CHECK(!c.value.empty());
    CHECK(!c.source.empty());
  }
}
