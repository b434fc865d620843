#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string kBin = TUNNELSIM_BIN;
const std::string kData = TUNNELSIM_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string temp_path(const std::string& name) {
  return std::string("/tmp/tunnelsim_test_") + name;
}

RunResult run(const std::string& args) {
  const std::string out_file = temp_path("stdout.txt");
  const std::string cmd = kBin + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double value_after(const std::string& text, const std::string& key) {
  const std::size_t pos = text.find(key);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size()));
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += (c == '\n') ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("bogus").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("delay").exit_code == 2);            // missing --config
  CHECK(run("delay --what").exit_code == 2);     // unknown flag
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("runtime errors exit with 1") {
  const RunResult r = run("delay --config /does/not/exist.ini");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("cannot open") != std::string::npos);
}

TEST_CASE("delay on the free-space config gives L/c") {
  const RunResult r = run("delay --config " + kData + "/configs/free_space.ini");
  REQUIRE(r.exit_code == 0);
  const double tau = value_after(r.output, "tau_s=");
  CHECK(std::abs(tau - 1.0006922855944562e-9) / 1.0006922855944562e-9 < 1e-6);

  // --omega0 override evaluates elsewhere but must give the same delay for
  // dispersionless free space
  const RunResult r2 = run("delay --config " + kData +
                           "/configs/free_space.ini --omega0 7.5e10");
  REQUIRE(r2.exit_code == 0);
  CHECK(std::abs(value_after(r2.output, "tau_s=") - tau) < 1e-15);
  CHECK(std::abs(value_after(r2.output, "omega0_rads=") - 7.5e10) < 1.0);
}

TEST_CASE("table output is byte-stable and matches the golden columns") {
  const std::string out1 = temp_path("table1.csv");
  const std::string out2 = temp_path("table2.csv");
  REQUIRE(run("table -o " + out1).exit_code == 0);
  REQUIRE(run("table -o " + out2).exit_code == 0);
  const std::string t1 = slurp(out1);
  CHECK(t1 == slurp(out2));

  // project the paper columns (reference, tau_paper_s, tau_paper, T_paper)
  std::istringstream lines(t1);
  std::string line;
  std::string projection = "reference,tau_paper_s,tau_paper,T_paper\n";
  bool header_seen = false;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 11);
    projection += cells[2] + "," + cells[7] + "," + cells[9] + "," + cells[10] +
                  "\n";
  }
  CHECK(projection == slurp(kData + "/golden/table1_paper_columns.csv"));
}

TEST_CASE("spectrum emits one row per grid point") {
  const std::string out = temp_path("spectrum.csv");
  REQUIRE(run("spectrum --config " + kData +
              "/configs/bandgap_mirror.ini -o " + out).exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("# tunnelsim ", 0) == 0);
  CHECK(text.find("omega_rads,nu_hz,abs_t2,phase_rad,abs_r2,flux_factor\n") !=
        std::string::npos);
  CHECK(count_lines(text) == 2 + 513);  // provenance + header + rows
}

TEST_CASE("hartman subcommand reports saturation") {
  const RunResult wg =
      run("hartman --config " + kData + "/configs/waveguide_hartman.ini");
  REQUIRE(wg.exit_code == 0);
  CHECK(wg.output.find("saturated=yes") != std::string::npos);

  const RunResult quantum =
      run("hartman --config " + kData + "/configs/quantum_hartman.ini");
  REQUIRE(quantum.exit_code == 0);
  CHECK(quantum.output.find("saturated=yes") != std::string::npos);

  const RunResult control =
      run("hartman --config " + kData + "/configs/free_space_hartman.ini");
  REQUIRE(control.exit_code == 0);
  CHECK(control.output.find("saturated=no") != std::string::npos);
}

TEST_CASE("ftir scan and inverse design") {
  const RunResult scan =
      run("ftir --config " + kData + "/configs/ftir_prisms.ini");
  REQUIRE(scan.exit_code == 0);
  CHECK(scan.output.find("gap_m,kappa_gap,coupler_ratio") != std::string::npos);
  CHECK(count_lines(scan.output) == 2 + 61);

  const RunResult design = run("ftir --config " + kData +
                               "/configs/ftir_prisms.ini --target 0.5");
  REQUIRE(design.exit_code == 0);
  const double achieved = value_after(design.output, "achieved_ratio=");
  CHECK(std::abs(achieved - 0.5) < 1e-3);
}

TEST_CASE("pulse reports a superluminal peak on the band-gap preset") {
  const RunResult r =
      run("pulse --config " + kData + "/configs/bandgap_mirror.ini -o " +
          temp_path("pulse.csv"));
  REQUIRE(r.exit_code == 0);
  const std::string text = slurp(temp_path("pulse.csv"));
  const double speed_ratio = value_after(text, "speed_over_c=");
  CHECK(speed_ratio > 1.2);
  const double corr = value_after(text, "correlation=");
  CHECK(corr > 0.99);
}

TEST_CASE("config overrides flow through --set") {
  const RunResult r = run("delay --config " + kData +
                          "/configs/free_space.ini --set layer.thickness_m=0.6");
  REQUIRE(r.exit_code == 0);
  const double tau = value_after(r.output, "tau_s=");
  CHECK(std::abs(tau - 2.0013845711889124e-9) / 2.0013845711889124e-9 < 1e-6);
}
