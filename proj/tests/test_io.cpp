#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "fixtures.hpp"
#include "singpencil/errors.hpp"
#include "singpencil/io.hpp"

using namespace singpencil;

namespace {

MatrixMarketData parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in);
}

std::size_t error_column(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.column();
  }
  ADD_FAILURE() << "no ParseError for: " << text;
  return 0;
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, bool complex, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = Scalar(rng.normal(), complex ? rng.normal() : 0.0);
  return m;
}

}  // namespace

TEST(MatrixMarket, ReadsArrayColumnMajor) {
  const auto d = parse(
      "%%MatrixMarket matrix array real general\n% comment\n2 3\n1\n2\n3\n4\n5\n6\n");
  EXPECT_EQ(d.field, FieldKind::real);
  ASSERT_EQ(d.matrix.rows(), 2);
  ASSERT_EQ(d.matrix.cols(), 3);
  EXPECT_EQ(d.matrix(0, 0), Scalar(1.0));
  EXPECT_EQ(d.matrix(1, 0), Scalar(2.0));
  EXPECT_EQ(d.matrix(0, 1), Scalar(3.0));
  EXPECT_EQ(d.matrix(1, 2), Scalar(6.0));
}

TEST(MatrixMarket, ReadsCoordinateAndSumsDuplicates) {
  const auto d = parse(
      "%%MatrixMarket matrix coordinate complex general\n2 2 3\n1 1 1.5 -2\n2 1 0 1\n1 1 0.5 0\n");
  EXPECT_EQ(d.field, FieldKind::complex);
  EXPECT_EQ(d.matrix(0, 0), Scalar(2.0, -2.0));
  EXPECT_EQ(d.matrix(1, 0), Scalar(0.0, 1.0));
  EXPECT_EQ(d.matrix(0, 1), Scalar(0.0));
  const auto i = parse("%%MatrixMarket matrix coordinate integer general\n1 2 1\n1 2 -7\n");
  EXPECT_EQ(i.matrix(0, 1), Scalar(-7.0));
}

TEST(MatrixMarket, RoundTripIsExact) {
  Rng rng(20240601);
  for (const bool complex : {false, true}) {
    for (const auto format : {MatrixMarketFormat::array, MatrixMarketFormat::coordinate}) {
      const Matrix m = random_matrix(5, 4, complex, rng);
      std::ostringstream out;
      write_matrix_market(out, m, complex ? FieldKind::complex : FieldKind::real, format);
      const auto back = parse(out.str());
      EXPECT_TRUE(back.matrix == m);
      EXPECT_EQ(back.field, complex ? FieldKind::complex : FieldKind::real);
    }
  }
  std::ostringstream out;
  write_matrix_market(out, fixtures::hmp_a(), FieldKind::real);
  EXPECT_NE(out.str().find("\n-1\n"), std::string::npos);
  EXPECT_EQ(out.str().find("-1.0"), std::string::npos);
  EXPECT_TRUE(parse(out.str()).matrix == fixtures::hmp_a());
}

TEST(MatrixMarket, RealOutputOfComplexRejected) {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 1) = Scalar(0.0, 1.0);
  std::ostringstream out;
  EXPECT_ANY_THROW(write_matrix_market(out, m, FieldKind::real));
}

TEST(MatrixMarket, ErrorsCarryPosition) {
  std::size_t line = 0;
  EXPECT_EQ(error_column("%%MatrixMarket matrix array real general\n2 2\n1\n2\nabc\n4\n", &line), 1u);
  EXPECT_EQ(line, 5u);
  EXPECT_EQ(error_column("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 3\n", &line), 3u);
  EXPECT_EQ(line, 3u);
  error_column("%%MatrixMarket matrix array real symmetric\n1 1\n1\n", &line);
  EXPECT_EQ(line, 1u);
  error_column("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n", &line);
  error_column("%%MatrixMarket matrix array real general\n1 1\n1\n2\n", &line);
  EXPECT_EQ(line, 4u);
  error_column("%%MatrixMarket matrix array real general\n1 1\ninf\n");
  error_column("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n", &line);
  EXPECT_EQ(line, 3u);
  error_column("not a banner\n");
}

TEST(MatrixMarket, MissingFileIsIoError) {
  EXPECT_THROW(read_matrix_market_file("/nonexistent/A.mtx"), IoError);
  EXPECT_THROW(write_text_file("/nonexistent/dir/x.json", "{}"), IoError);
}

TEST(MatrixMarket, PencilFieldFromFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "singpencil_test_io";
  std::filesystem::create_directories(dir);
  Matrix c = Matrix::Identity(2, 2);
  c(1, 0) = Scalar(0.0, 2.0);
  write_matrix_market_file((dir / "A.mtx").string(), Matrix::Identity(2, 2), FieldKind::real);
  write_matrix_market_file((dir / "B.mtx").string(), c, FieldKind::complex);
  const Pencil p = read_pencil((dir / "A.mtx").string(), (dir / "B.mtx").string());
  EXPECT_EQ(p.field, FieldKind::complex);
  EXPECT_TRUE(p.B == c);
  std::filesystem::remove_all(dir);
}

TEST(Formatting, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-3.0), "-3");
  const double v = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(v)), v);
  EXPECT_EQ(format_lambda(Scalar(std::numeric_limits<double>::infinity(), 0.0)), "inf");
  const Json inf = scalar_json(Scalar(std::numeric_limits<double>::infinity(), 1.0));
  EXPECT_EQ(inf[0], "inf");
  EXPECT_EQ(inf[1], 1.0);
  EXPECT_EQ(scalar_json(Scalar(std::nan(""), 0.0))[0], "nan");
}

TEST(Json, SolveReportSchema) {
  const auto [p, gt] = paper_pencil(PaperPencil::hmp8x8);
  MethodConfig cfg;
  Rng rng(42);
  const SolveReport rep = solve(p, 2, cfg, rng);
  RunManifest m;
  m.command = "solve";
  m.seed = 42;
  const Json j = to_json(rep, m);
  EXPECT_EQ(j["schema"], "singpencil/1");
  EXPECT_EQ(j["kind"], "solve_report");
  EXPECT_EQ(j["manifest"]["seed"], 42);
  EXPECT_FALSE(j["manifest"].contains("timing_seconds"));
  EXPECT_EQ(j["records"].size(), 8u);
  EXPECT_EQ(j["finite_eigenvalues"].size(), 2u);
  for (const char* key : {"alpha", "beta", "lambda", "sigma", "tau", "gamma", "class", "x", "y"})
    EXPECT_TRUE(j["records"][0].contains(key)) << key;
  EXPECT_TRUE(j["modification"].contains("D_A"));
  int infinite = 0;
  for (const auto& r : j["records"])
    if (r["class"] == "true_infinite") infinite += r["lambda"] == "inf";
  EXPECT_EQ(infinite, 1);
  EXPECT_EQ(j.dump(), to_json(rep, m).dump());
  m.timing = 1.5;
  EXPECT_EQ(to_json(rep, m)["manifest"]["timing_seconds"], 1.5);
}

TEST(Json, GroundTruthSchema) {
  const auto [p, gt] = assemble(KcfSpec::parse("J1(2),N1,L1,LT0"));
  const Json j = to_json(p, gt, RunManifest{});
  EXPECT_EQ(j["kind"], "ground_truth");
  EXPECT_EQ(j["nrank"], 3);
  EXPECT_EQ(j["k"], 1);
  EXPECT_EQ(j["M"], 1);
  EXPECT_EQ(j["N"], 0);
  EXPECT_EQ(j["m_rs_dim"], gt.spec.M() + gt.spec.k());
  EXPECT_TRUE(j.contains("P_inv"));
  EXPECT_EQ(j["eigenvalues"].size(), 1u);
}

TEST(Csv, ManifestLineAndQuoting) {
  RunManifest m;
  m.command = "bounds";
  std::ostringstream out;
  write_csv(out, m, {"t", "note"}, {{"0.01", "a,b"}, {"0.1", "say \"hi\""}});
  const std::string s = out.str();
  ASSERT_EQ(s.rfind("# {", 0), 0u);
  const auto first = s.find("\r\n");
  EXPECT_EQ(Json::parse(s.substr(2, first - 2))["command"], "bounds");
  EXPECT_EQ(s.substr(first + 2), "t,note\r\n0.01,\"a,b\"\r\n0.1,\"say \"\"hi\"\"\"\r\n");
}
