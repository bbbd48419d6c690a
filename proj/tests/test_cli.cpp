#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "testcheck.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(OIC_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() / ("oic_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto path = dir_ / name;
    std::ofstream out(path);
    out << content;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

const char* kExample3Channel =
    R"({"h_raw":[4e-6,1.5e-6,3e-6],"peaks":[2,3,2.5],"alpha":[0.4,0.1,0.1],"sigma_raw":1e-6})";
const char* kExample2Channel = R"({"h":[0.4,0.2,0.4],"alpha":[0.8,0.3,0.1],"sigma":1.0})";
const char* kSisoHalf = R"({"h":[1.0],"alpha":[0.5],"sigma":1.0})";

}  // namespace

TEST_CASE("feasible subcommand exit codes") {
  TempDir tmp;
  const auto ch3 = tmp.file("ch3.json", kExample3Channel);
  const auto ook = tmp.file("ook.json", R"({"type":"discrete","support":[0,1],"masses":[0.9,0.1]})");
  const auto zero = tmp.file("zero.json", R"({"type":"discrete","support":[0],"masses":[1]})");

  auto r = run_cli("feasible --channel " + ch3 + " --dist " + ook + " --kind bc");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"feasible\":true") != std::string::npos);

  r = run_cli("feasible --channel " + ch3 + " --dist " + zero + " --kind bc");
  CHECK(r.exit_code == 0);

  // the mean-only relaxed law violates the stop-loss constraints of the
  // three-antenna equal-cost channel
  const auto ch2 = tmp.file("ch2.json", kExample2Channel);
  const auto onedim = tmp.file("ch1.json", R"({"h":[1.0],"alpha":[0.42],"sigma":1.0})");
  auto me = run_cli("maxent --channel " + onedim + " --kind ec");
  REQUIRE(me.exit_code == 0);
  // extract lambda_0 from the JSON dump
  const auto lpos = me.out.find("\"lambdas\":[");
  REQUIRE(lpos != std::string::npos);
  const double l0 = std::strtod(me.out.c_str() + lpos + 11, nullptr);
  const auto npos_ = me.out.find("\"nu0\":");
  const double nu0 = std::strtod(me.out.c_str() + npos_ + 6, nullptr);
  std::ostringstream relaxed;
  relaxed << R"({"type":"pwexp","nu0":)" << nu0 << R"(,"lambdas":[)" << l0 << ",0,0]}";
  const auto rel = tmp.file("relaxed.json", relaxed.str());
  r = run_cli("feasible --channel " + ch2 + " --dist " + rel + " --kind ec");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("\"feasible\":false") != std::string::npos);

  // malformed input
  const auto bad = tmp.file("bad.json", R"({"h":[0.4],"alpha":[2.0],"sigma":1.0})");
  r = run_cli("feasible --channel " + bad + " --dist " + ook + " --kind ec");
  CHECK(r.exit_code == 1);
}

TEST_CASE("decompose golden rows for the merged raw channel") {
  TempDir tmp;
  const auto ch3 = tmp.file("ch3.json", kExample3Channel);
  const auto maxent = tmp.file("me.json", R"({"type":"maxent"})");
  auto r = run_cli("decompose --channel " + ch3 + " --dist " + maxent +
                   " --kind bc --s 0 --s 0.2 --s 0.5 --s 0.9 --plan-out " + tmp.path("plan.json"));
  REQUIRE(r.exit_code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"s", "x_1", "x_2", "x_3", "x_raw_1", "x_raw_2",
                                            "x_raw_3"});
  // all-zero row at s = 0
  for (int c = 1; c <= 6; ++c) CHECK(std::strtod(rows[1][c].c_str(), nullptr) == 0.0);
  // unnormalized signals from the worked example
  CHECK_NEAR(std::strtod(rows[2][4].c_str(), nullptr), 1.0, 1e-2);
  CHECK_NEAR(std::strtod(rows[3][4].c_str(), nullptr), 1.36, 1e-2);
  CHECK_NEAR(std::strtod(rows[3][5].c_str(), nullptr), 1.14, 1e-2);
  CHECK_NEAR(std::strtod(rows[3][6].c_str(), nullptr), 0.95, 1e-2);
  CHECK_NEAR(std::strtod(rows[4][4].c_str(), nullptr), 1.5, 1e-2);
  CHECK_NEAR(std::strtod(rows[4][5].c_str(), nullptr), 3.0, 1e-9);
  CHECK_NEAR(std::strtod(rows[4][6].c_str(), nullptr), 2.5, 1e-9);

  std::ifstream plan(tmp.path("plan.json"));
  REQUIRE(plan.good());
  std::stringstream ss;
  ss << plan.rdbuf();
  CHECK(ss.str().find("\"kappa\"") != std::string::npos);

  // infeasible pair exits with 2
  const auto fat = tmp.file("fat.json", R"({"type":"discrete","support":[0,1],"masses":[0.5,0.5]})");
  auto bad = run_cli("decompose --channel " + ch3 + " --dist " + fat + " --kind bc --grid 3");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("decompose handles the flipped equal-cost channel") {
  // ratios above one half trigger the input flip; outputs must still be in
  // the original coordinates, so h'x reconstructs every realization
  TempDir tmp;
  const auto ch = tmp.file("flip.json", R"({"h":[0.3,0.7],"alpha":[0.9,0.8],"sigma":1.0})");
  const auto maxent = tmp.file("me.json", R"({"type":"maxent"})");
  auto r = run_cli("decompose --channel " + ch + " --dist " + maxent + " --kind ec --grid 11");
  REQUIRE(r.exit_code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 12);
  const double h[2] = {0.3, 0.7};
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double s = std::strtod(rows[i][0].c_str(), nullptr);
    const double x1 = std::strtod(rows[i][1].c_str(), nullptr);
    const double x2 = std::strtod(rows[i][2].c_str(), nullptr);
    CHECK_NEAR(h[0] * x1 + h[1] * x2, s, 1e-9);
    CHECK(x1 >= 0.0);
    CHECK(x1 <= 1.0);
  }
  // the endpoints map to all-off and all-on
  CHECK_NEAR(std::strtod(rows[1][1].c_str(), nullptr), 0.0, 1e-9);
  CHECK_NEAR(std::strtod(rows[11][2].c_str(), nullptr), 1.0, 1e-9);
}

TEST_CASE("bounds subcommand emits the sweep and the asymptote footers") {
  TempDir tmp;
  const auto siso = tmp.file("siso.json", kSisoHalf);
  auto r = run_cli("bounds --channel " + siso +
                   " --kind ec --sigma-min 0.001 --sigma-max 10 --points 12");
  REQUIRE(r.exit_code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 12 + 2);
  CHECK(rows[0][0] == "sigma");
  REQUIRE(rows[0].size() == 8);
  double prev_sigma = 0.0;
  for (int i = 1; i <= 12; ++i) {
    REQUIRE(rows[i].size() == 8);
    const double sigma = std::strtod(rows[i][0].c_str(), nullptr);
    const double gap = std::strtod(rows[i][7].c_str(), nullptr);
    CHECK(sigma > prev_sigma);
    CHECK(gap >= -1e-9);
    prev_sigma = sigma;
  }
  CHECK(rows[13][0] == "low_snr_slope");
  CHECK_NEAR(std::strtod(rows[13][1].c_str(), nullptr), 0.125, 1e-12);
  CHECK(rows[14][0] == "high_snr_offset");
  CHECK_NEAR(std::strtod(rows[14][1].c_str(), nullptr), -1.41894, 1e-4);

  // byte-identical across runs
  auto again = run_cli("bounds --channel " + siso +
                       " --kind ec --sigma-min 0.001 --sigma-max 10 --points 12");
  CHECK(again.out == r.out);
}

TEST_CASE("maxent subcommand dumps the dual solution") {
  TempDir tmp;
  const auto ch2 = tmp.file("ch2.json", kExample2Channel);
  auto r = run_cli("maxent --channel " + ch2 + " --kind ec");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("\"gamma\":") != std::string::npos);
  CHECK(r.out.find("\"lambdas\":[-2.917") != std::string::npos);
  CHECK(r.out.find("\"breakpoints\":[0.4,") != std::string::npos);
}

TEST_CASE("verify subcommand runs the sandwich") {
  TempDir tmp;
  const auto ch3 = tmp.file("ch3.json", kExample3Channel);
  auto r = run_cli("verify --channel " + ch3 +
                   " --kind bc --sigma-min 0.05 --sigma-max 0.2 --points 2 --seed 7");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("maximally_convex") != std::string::npos);
  CHECK(r.out.find("maxent") != std::string::npos);
  CHECK(r.out.find("ook") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
