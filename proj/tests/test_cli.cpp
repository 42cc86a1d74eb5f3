#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "singpencil/io.hpp"

using namespace singpencil;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(SINGPENCIL_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name, const char* file) {
  return std::string(SINGPENCIL_DATA_DIR) + "/" + name + "/" + file;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("singpencil_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

const std::string kHmp = "-A " + data("hmp8x8", "A.mtx") + " -B " + data("hmp8x8", "B.mtx");

}  // namespace

TEST_F(Cli, SolveListsExampleEigenvalues) {
  const CliResult r = run("solve " + kHmp + " --k 2 --seed 1");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.333333"), std::string::npos);
  EXPECT_NE(r.out.find("0.5"), std::string::npos);
  const CliResult auto_k = run("solve " + kHmp + " --seed 1");
  EXPECT_EQ(auto_k.code, 0);
  EXPECT_NE(auto_k.out.find("k = 2"), std::string::npos);
}

TEST_F(Cli, SolveJsonIsReproducible) {
  ASSERT_EQ(run("solve " + kHmp + " --seed 42 --out " + path("a.json")).code, 0);
  ASSERT_EQ(run("solve " + kHmp + " --seed 42 --out " + path("b.json")).code, 0);
  const std::string a = slurp(path("a.json"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(path("b.json")));
  const Json j = Json::parse(a);
  EXPECT_EQ(j["kind"], "solve_report");
  EXPECT_EQ(j["finite_eigenvalues"].size(), 2u);
  EXPECT_FALSE(j["manifest"].contains("timing_seconds"));
  ASSERT_EQ(run("solve " + kHmp + " --seed 42 --record-timing --out " + path("c.json")).code, 0);
  EXPECT_TRUE(Json::parse(slurp(path("c.json")))["manifest"].contains("timing_seconds"));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("solve " + kHmp + " --k 0").code, 64);
  EXPECT_EQ(run("solve " + kHmp + " --method qz").code, 64);
  EXPECT_EQ(run("gen --spec 'J1(0.5),X2' --out-dir " + path("g")).code, 64);
  EXPECT_EQ(run("solve -A /nonexistent/A.mtx -B /nonexistent/B.mtx").code, 3);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("mc --paper hmp8x8 --trials 10").code, 64);
}

TEST_F(Cli, GenReproducesPrintedExample) {
  ASSERT_EQ(run("gen --paper hmp8x8 --out-dir " + path("hmp")).code, 0);
  const auto a = read_matrix_market_file(path("hmp/A.mtx"));
  const auto b = read_matrix_market_file(path("hmp/B.mtx"));
  EXPECT_TRUE(a.matrix == fixtures::hmp_a());
  EXPECT_TRUE(b.matrix == fixtures::hmp_b());
  EXPECT_EQ(slurp(path("hmp/A.mtx")), slurp(data("hmp8x8", "A.mtx")));
}

TEST_F(Cli, GenFromSpecWritesTruth) {
  const std::string spec = "'J1(1/2),J1(1/3),N1,L0,L1,LT0,LT2'";
  ASSERT_EQ(run("gen --spec " + spec + " --out-dir " + path("s")).code, 0);
  const Json t = Json::parse(slurp(path("s/truth.json")));
  EXPECT_EQ(t["nrank"], 6);
  EXPECT_EQ(t["k"], 2);
  EXPECT_EQ(t["exact_transforms"], true);
  ASSERT_EQ(run("gen --spec " + spec + " --disguise orthogonal --seed 3 --out-dir " + path("o")).code, 0);
  const CliResult r = run("solve -A " + path("o/A.mtx") + " -B " + path("o/B.mtx") + " --seed 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k = 2"), std::string::npos);
  EXPECT_NE(r.out.find("0.333333"), std::string::npos);
}

TEST_F(Cli, BoundsRefinedColumn) {
  const CliResult r = run("bounds --k 4 --t-grid 0.01 --trials 1000 --seed 1");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string manifest, header, row;
  std::getline(in, manifest);
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(manifest.rfind("# {", 0), 0u);
  EXPECT_EQ(header.substr(0, header.find('\r')), "t,empirical,standard_error,simple_upper,refined_upper,lower");
  std::vector<std::string> cells;
  std::stringstream rs(row.substr(0, row.find('\r')));
  for (std::string c; std::getline(rs, c, ',');) cells.push_back(c);
  ASSERT_GE(cells.size(), 5u);
  EXPECT_NEAR(std::stod(cells[4]), 16e-4 * (1.0 - 2.0 * std::log(0.01)), 1e-15);
  EXPECT_NEAR(std::stod(cells[3]), 0.08, 1e-15);
}

TEST_F(Cli, McWithinCritical) {
  const CliResult r = run("mc --paper hmp8x8 --lambda 0.5 --trials 10000 --seed 20240601 --out " + path("mc.json") +
                    " --csv " + path("mc.csv"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(slurp(path("mc.json")));
  EXPECT_EQ(j["kind"], "mc_report");
  EXPECT_LT(j["ks_stat"].get<double>(), j["ks_critical_1pct"].get<double>());
  EXPECT_NEAR(j["empirical_mean"].get<double>(), 0.28444, 0.015);
  EXPECT_NE(slurp(path("mc.csv")).find("bin_lo,bin_hi,count,model_pdf_midpoint"), std::string::npos);
}

TEST_F(Cli, SensitivityWithinBounds) {
  const CliResult r = run("sensitivity --paper hmp8x8 --seed 20240601 --out " + path("w.json"));
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(slurp(path("w.json")));
  EXPECT_EQ(j["kind"], "weak_condition");
  EXPECT_GE(j["quantile_value"].get<double>(), j["lower_bound"].get<double>());
  EXPECT_LE(j["quantile_value"].get<double>(), j["upper_bound"].get<double>());
}
