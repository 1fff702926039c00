#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <unistd.h>

using std::string;

namespace {

string cli_path() {
  if (const char *env = std::getenv("ENVRATES_CLI"))
    return env;
  // fall back to the sibling build-tree location
  char buf[4096];
  const ssize_t n = readlink("/proc/self/exe", buf, sizeof(buf) - 1);
  if (n > 0) {
    const string self(buf, static_cast<std::size_t>(n));
    const auto slash = self.rfind('/');
    if (slash != string::npos) {
      const string candidate = self.substr(0, slash) + "/../tools/envrates";
      if (std::ifstream(candidate).good())
        return candidate;
    }
  }
  REQUIRE_MESSAGE(false, "CLI binary not found; set ENVRATES_CLI");
  return {};
}

string data_dir() {
  const char *env = std::getenv("ENVRATES_DATA_DIR");
  return env != nullptr ? env : "data";
}

struct RunResult {
  int exit_code = -1;
  string output; // stdout only
};

RunResult run(const string &args) {
  const string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

string slurp(const string &path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("rate subcommand against the bundled config") {
  const RunResult r =
      run("rate --process auger --config " + data_dir() + "/hene_surface.json");
  CHECK(r.exit_code == 0);
  // golden values pinned after the first verified run
  CHECK(r.output.find("1.23652483e+13") != string::npos); // free-space rate
  CHECK(r.output.find("1.08659728") != string::npos);     // relative factor
}

TEST_CASE("hene subcommand prints the dimer summary") {
  const RunResult r = run("hene");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("6.58643326") != string::npos);    // r_ab / a
  CHECK(r.output.find("8.11824841e-05") != string::npos); // b_icd
  CHECK(r.output.find("6.04320925e-06") != string::npos); // b_a
  CHECK(r.output.find("2.02724109") != string::npos);     // B/B0 at 2 A
  CHECK(r.output.find("1/s") != string::npos);
  CHECK(r.output.find("Jabbari") != string::npos); // data provenance
}

TEST_CASE("unknown subcommand exits 1") {
  CHECK(run("frobnicate").exit_code == 1);
  CHECK(run("").exit_code == 1);
}

TEST_CASE("physics errors exit 2") {
  // perpendicular sweep without a surface: domain error from the modules
  const RunResult r = run("rate --process icd --rnr -2,0 --dr 0 --rab 3.01");
  CHECK(r.exit_code == 2);
}

TEST_CASE("sweep emits one row per step plus a header") {
  const RunResult r = run("sweep --material 1 --geometry perpendicular "
                          "--orientation iso --dr-min 1 --dr-max 2 --steps 2");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.output)
    if (c == '\n')
      ++lines;
  CHECK(lines == 3);
  CHECK(r.output.find("dr_angstrom") != string::npos);
}

TEST_CASE("sweep endpoints follow the closed forms") {
  // material 1 (r_NR = -2), perpendicular isotropic: the factor starts
  // near the contact value 11/3 and returns to 1 far away
  const RunResult r =
      run("sweep --material 1 --geometry perpendicular --orientation iso "
          "--dr-min 0.0301 --dr-max 30.1 --steps 3 --log");
  CHECK(r.exit_code == 0);
  // first data row: dr = 0.01 r_ab
  const auto row1 = r.output.find('\n') + 1;
  const string first = r.output.substr(row1, r.output.find('\n', row1) - row1);
  CHECK(first.find("3.29545575") != string::npos); // closed form at 0.01 r_ab
  const auto last_start = r.output.rfind('\n', r.output.size() - 2) + 1;
  const string last = r.output.substr(last_start);
  CHECK(last.find("0.999856074") != string::npos); // ~1 at 10 r_ab
}

TEST_CASE("material 2 kills the first-order term") {
  // r_NR = 2i: deviation from 1 is |r|^2-driven only, so the factor
  // equals the mean of the +2 and -2 curves; spot-check one distance.
  const RunResult plus = run("sweep --material 4 --geometry perpendicular "
                             "--orientation iso --dr-min 1 --dr-max 1.5 "
                             "--steps 2");
  const RunResult minus = run("sweep --material 1 --geometry perpendicular "
                              "--orientation iso --dr-min 1 --dr-max 1.5 "
                              "--steps 2");
  const RunResult reactive = run("sweep --material 2 --geometry perpendicular "
                                 "--orientation iso --dr-min 1 --dr-max 1.5 "
                                 "--steps 2");
  auto icd_first = [](const string &csv) {
    // 4th field of the first data row
    auto pos = csv.find('\n') + 1;
    for (int comma = 0; comma < 3; ++comma)
      pos = csv.find(',', pos) + 1;
    return std::stod(csv.substr(pos));
  };
  const double mean = 0.5 * (icd_first(plus.output) + icd_first(minus.output));
  CHECK(icd_first(reactive.output) == doctest::Approx(mean).epsilon(1e-9));
}

TEST_CASE("csv output files are byte-identical across runs") {
  const string out1 = "/tmp/envrates_cli_det1.csv";
  const string out2 = "/tmp/envrates_cli_det2.csv";
  const string cmd = "sweep --material 3 --geometry parallel --orientation "
                     "mpm1 --dr-min 0.5 --dr-max 20 --steps 64 --log --output ";
  CHECK(run(cmd + out1).exit_code == 0);
  CHECK(run(cmd + out2).exit_code == 0);
  const string a = slurp(out1), b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("contour subcommand writes a well-formed grid") {
  const RunResult r =
      run("contour --material 1 --x-min -3 --x-max 3 --z-min 0.5 --z-max 5 "
          "--nx 3 --nz 3 --orientation m0");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.output)
    if (c == '\n')
      ++lines;
  CHECK(lines == 10); // header + 9 grid points
}

TEST_CASE("materials subcommand dumps the reference table") {
  const RunResult r = run("materials");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("-0.333333333") != string::npos); // eps of row 1
  CHECK(r.output.find("1.41") != string::npos);
}

TEST_CASE("every CSV header column carries a unit suffix") {
  for (const string &cmd :
       {string("sweep --material 1 --dr-min 1 --dr-max 2 --steps 2"),
        string("contour --material 1 --x-min -1 --x-max 1 --z-min 1 "
               "--z-max 2 --nx 2 --nz 2"),
        string("rate --process auger --format csv"),
        string("cavity --q 100 --s 1 --format csv"),
        string("table --a-alpha 0.1 --im-alpha 0.001 --format csv"),
        string("materials")}) {
    const RunResult r = run(cmd);
    REQUIRE(r.exit_code == 0);
    const string header = r.output.substr(0, r.output.find('\n'));
    std::size_t start = 0;
    while (start < header.size()) {
      auto end = header.find(',', start);
      if (end == string::npos)
        end = header.size();
      const string col = header.substr(start, end - start);
      const bool ok = col == "flags" || col == "numerator" ||
                      col == "denominator" ||
                      col.find("_per_s") != string::npos ||
                      col.rfind("_angstrom") != string::npos ||
                      col.rfind("_dimensionless") != string::npos;
      CHECK_MESSAGE(ok, "column lacks a unit suffix: ", col);
      start = end + 1;
    }
  }
}
