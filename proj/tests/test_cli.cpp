#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string bin = GAPLAB_BIN;
const std::string docs = DOCS_EXAMPLES_DIR;
const std::string fixtures = FIXTURE_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const std::string out_file = "cli_output.tmp";
  const std::string cmd = env_prefix + bin + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  result.output = buffer.str();
  return result;
}

double value_after(const std::string& text, const std::string& label) {
  const auto pos = text.find(label);
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + label.size()));
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("gap command") {
  RunResult same = run("gap " + fixtures + "/scalar_zero.json " + fixtures + "/scalar_zero.json");
  CHECK(same.exit_code == 0);
  CHECK(value_after(same.output, "gap = ") == doctest::Approx(0.0).epsilon(1e-12));

  RunResult lines = run("gap " + fixtures + "/scalar_zero.json " + fixtures + "/scalar_one.json");
  CHECK(lines.exit_code == 0);
  CHECK(value_after(lines.output, "gap = ") ==
        doctest::Approx(0.7071067811865476).epsilon(1e-12));
  CHECK(value_after(lines.output, "projector_distance = ") ==
        doctest::Approx(0.7071067811865476).epsilon(1e-9));
  CHECK(lines.output.find("delta(A,B) = ") != std::string::npos);
  CHECK(lines.output.find("delta(B,A) = ") != std::string::npos);

  // Graph-kind files with n2 = 0 carry plain subspaces.
  RunResult subspaces = run("gap " + fixtures + "/line_x.json " + fixtures + "/line_y.json");
  CHECK(subspaces.exit_code == 0);
  CHECK(value_after(subspaces.output, "gap = ") == doctest::Approx(1.0).epsilon(1e-12));

  RunResult mismatched =
      run("gap " + fixtures + "/scalar_zero.json " + docs + "/rational_pole.json");
  CHECK(mismatched.exit_code == 3);

  RunResult missing = run("gap no_such.json " + fixtures + "/scalar_zero.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("charmat command") {
  RunResult two = run("charmat " + fixtures + "/scalar_two.json");
  CHECK(two.exit_code == 0);
  std::istringstream is(two.output);
  std::string header;
  std::getline(is, header);
  CHECK(header == "rows 2 cols 2");
  double expected[2][2] = {{0.2, 0.4}, {0.4, 0.8}};
  for (int i = 0; i < 2; ++i) {
    std::string line;
    std::getline(is, line);
    std::istringstream row(line);
    for (int j = 0; j < 2; ++j) {
      std::string token;
      row >> token;
      double re = 0, im = 1;
      REQUIRE(std::sscanf(token.c_str(), "%lf%lf", &re, &im) == 2);
      CHECK(re == doctest::Approx(expected[i][j]).epsilon(1e-12));
      CHECK(im == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  RunResult not_transversal = run("charmat " + fixtures + "/scalar_one.json --relative " +
                                  fixtures + "/scalar_minus_one.json");
  CHECK(not_transversal.exit_code == 4);
}

TEST_CASE("holo-check command") {
  RunResult line = run("holo-check " + docs + "/scalar_z.json --at 0,0");
  CHECK(line.exit_code == 0);
  CHECK(line.output.find("classification: holomorphic") != std::string::npos);

  RunResult conj = run("holo-check --builtin conjugate --at 0,0");
  CHECK(conj.exit_code == 1);
  CHECK(conj.output.find("not_holomorphic") != std::string::npos);

  RunResult at_eigenvalue = run("holo-check --builtin resolvent --matrix 'diag(1,2)' --at 1,0");
  CHECK(at_eigenvalue.exit_code == 5);

  RunResult off_eigenvalue = run("holo-check --builtin resolvent --matrix 'diag(1,2)' --at 4,0.5");
  CHECK(off_eigenvalue.exit_code == 0);

  CHECK(run("holo-check --builtin kernel-line --at 0,0").exit_code == 0);
  CHECK(run("holo-check --builtin kernel-line-orthogonal --at 0,0").exit_code == 1);

  RunResult resolution =
      run("holo-check " + docs + "/resolvent_resolution.json --mode resolution --at 4,0.5");
  CHECK(resolution.exit_code == 0);

  RunResult moving_line =
      run("holo-check " + fixtures + "/moving_line.json --mode subspace --at 0,0");
  CHECK(moving_line.exit_code == 0);

  CHECK(run("holo-check --builtin nonsense --at 0,0").exit_code == 2);
  CHECK(run("holo-check --at 0,0").exit_code == 2);
}

TEST_CASE("holo-scan command") {
  RunResult scan =
      run("holo-scan " + docs + "/scalar_z.json --grid -1,1,-1,1,4 --out scan_a.csv");
  CHECK(scan.exit_code == 0);
  std::vector<std::string> lines = read_lines("scan_a.csv");
  REQUIRE(lines.size() == 17);
  CHECK(lines[0] == "re,im,cr_residual,gap_modulus,class,status");
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(lines[i].find(",H,0") != std::string::npos);

  RunResult again =
      run("holo-scan " + docs + "/scalar_z.json --grid -1,1,-1,1,4 --out scan_b.csv");
  CHECK(again.exit_code == 0);
  CHECK(read_all("scan_a.csv") == read_all("scan_b.csv"));
}

TEST_CASE("holo-scan marks eigenvalue failures per point") {
  RunResult scan = run(
      "holo-scan --builtin resolvent --matrix 'diag(1,2)' --grid 0,3,0,0,7 --out scan_res.csv");
  CHECK(scan.exit_code == 0);
  std::vector<std::string> lines = read_lines("scan_res.csv");
  REQUIRE(lines.size() == 50);  // 7x7 grid (degenerate im range) + header
  int failures = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const double re = std::stod(line);
    const bool failed = line.rfind(",0") != line.size() - 2;
    if (failed) ++failures;
    const bool at_eigenvalue = std::abs(re - 1.0) < 1e-9 || std::abs(re - 2.0) < 1e-9;
    CHECK(failed == at_eigenvalue);
  }
  CHECK(failures == 14);
}

TEST_CASE("verify command") {
  RunResult ok = run("verify --suite grassmann --seed 3");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("verify: PASS") != std::string::npos);

  CHECK(run("verify --suite bogus").exit_code == 2);
}

TEST_CASE("tolerance overrides from the environment") {
  const std::string good = "GAPLAB_TOLERANCES=" + fixtures + "/tolerances_ok.json ";
  CHECK(run("holo-check " + docs + "/scalar_z.json --at 0,0", good).exit_code == 0);
  const std::string bad = "GAPLAB_TOLERANCES=" + fixtures + "/tolerances_bad.json ";
  CHECK(run("holo-check " + docs + "/scalar_z.json --at 0,0", bad).exit_code == 2);
}
