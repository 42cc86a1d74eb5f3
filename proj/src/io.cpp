#include "singpencil/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <Eigen/Core>

#include "singpencil/errors.hpp"

namespace singpencil {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double to_double(const Token& t, std::size_t line) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("invalid number '" + t.text + "'", line, t.column);
  }
  if (!std::isfinite(v)) throw ParseError("non-finite entry '" + t.text + "'", line, t.column);
  return v;
}

long long to_index(const Token& t, std::size_t line) {
  long long v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ParseError("invalid integer '" + t.text + "'", line, t.column);
  }
  return v;
}

// Next non-comment, non-blank line; false at end of input.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

void write_real(std::ostream& out, double v) { out << format_double(v); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_json(v(i)));
  return out;
}

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json header(const char* kind, const RunManifest& manifest) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  j["manifest"] = manifest.to_json();
  return j;
}

Json bound_rows_json(const std::vector<BoundRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["t"] = r.t;
    row["empirical"] = r.empirical;
    row["standard_error"] = r.standard_error;
    row["simple_upper"] = r.simple_upper;
    row["refined_upper"] = r.refined_upper;
    row["lower"] = json_number(r.lower);
    out.push_back(std::move(row));
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

MatrixMarketData read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market input", 1, 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto head = tokenize(line);
  if (head.empty() || lower(head[0].text) != "%%matrixmarket") {
    throw ParseError("missing %%MatrixMarket banner", 1, 1);
  }
  if (head.size() != 5) throw ParseError("banner needs 5 fields", 1, head.back().column);
  if (lower(head[1].text) != "matrix") {
    throw ParseError("unsupported object '" + head[1].text + "'", 1, head[1].column);
  }
  const std::string format = lower(head[2].text);
  if (format != "array" && format != "coordinate") {
    throw ParseError("unsupported format '" + head[2].text + "'", 1, head[2].column);
  }
  const std::string field = lower(head[3].text);
  if (field != "real" && field != "integer" && field != "complex") {
    throw ParseError("unsupported field '" + head[3].text + "'", 1, head[3].column);
  }
  if (lower(head[4].text) != "general") {
    throw ParseError("unsupported symmetry '" + head[4].text + "'", 1, head[4].column);
  }
  const bool cplx = field == "complex";
  const std::size_t per_entry = cplx ? 2 : 1;

  if (!next_data_line(in, line, lineno)) throw ParseError("missing size line", lineno + 1, 1);
  const auto size = tokenize(line);
  const std::size_t want = format == "array" ? 2 : 3;
  if (size.size() != want) {
    throw ParseError("size line needs " + std::to_string(want) + " integers", lineno,
                     size.empty() ? 1 : size.front().column);
  }
  const long long rows = to_index(size[0], lineno);
  const long long cols = to_index(size[1], lineno);
  if (rows <= 0) throw ParseError("row count must be positive", lineno, size[0].column);
  if (cols <= 0) throw ParseError("column count must be positive", lineno, size[1].column);

  MatrixMarketData out;
  out.field = cplx ? FieldKind::complex : FieldKind::real;
  out.matrix = Matrix::Zero(rows, cols);

  if (format == "array") {
    const long long total = rows * cols;
    long long idx = 0;
    while (idx < total) {
      if (!next_data_line(in, line, lineno)) {
        throw ParseError("expected " + std::to_string(total) + " entries, found " +
                             std::to_string(idx),
                         lineno + 1, 1);
      }
      const auto tok = tokenize(line);
      if (tok.size() != per_entry) {
        throw ParseError("expected " + std::to_string(per_entry) + " value(s) per line", lineno,
                         tok.size() > per_entry ? tok[per_entry].column : tok.back().column);
      }
      const double re = to_double(tok[0], lineno);
      const double im = cplx ? to_double(tok[1], lineno) : 0.0;
      // Column-major order.
      out.matrix(idx % rows, idx / rows) = Scalar(re, im);
      ++idx;
    }
  } else {
    const long long nnz = to_index(size[2], lineno);
    if (nnz < 0) throw ParseError("entry count must be non-negative", lineno, size[2].column);
    for (long long e = 0; e < nnz; ++e) {
      if (!next_data_line(in, line, lineno)) {
        throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(e),
                         lineno + 1, 1);
      }
      const auto tok = tokenize(line);
      if (tok.size() != 2 + per_entry) {
        throw ParseError("expected " + std::to_string(2 + per_entry) + " fields per entry", lineno,
                         tok.size() > 2 + per_entry ? tok[2 + per_entry].column : tok.back().column);
      }
      const long long i = to_index(tok[0], lineno);
      const long long j = to_index(tok[1], lineno);
      if (i < 1 || i > rows) throw ParseError("row index out of range", lineno, tok[0].column);
      if (j < 1 || j > cols) throw ParseError("column index out of range", lineno, tok[1].column);
      const double re = to_double(tok[2], lineno);
      const double im = cplx ? to_double(tok[3], lineno) : 0.0;
      out.matrix(i - 1, j - 1) += Scalar(re, im);
    }
  }
  if (next_data_line(in, line, lineno)) {
    throw ParseError("unexpected data after the last entry", lineno, tokenize(line).front().column);
  }
  return out;
}

MatrixMarketData read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return read_matrix_market(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + std::string(e.what()).substr(0, std::string(e.what()).rfind(" (line")),
                     e.line(), e.column());
  }
}

void write_matrix_market(std::ostream& out, const Matrix& m, FieldKind field,
                         MatrixMarketFormat format) {
  const bool cplx = field == FieldKind::complex;
  if (!cplx && !is_real_valued(m)) throw InvalidArgument("real output of a complex matrix");
  out << "%%MatrixMarket matrix " << (format == MatrixMarketFormat::array ? "array" : "coordinate")
      << ' ' << (cplx ? "complex" : "real") << " general\n";
  if (format == MatrixMarketFormat::array) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        write_real(out, m(i, j).real());
        if (cplx) {
          out << ' ';
          write_real(out, m(i, j).imag());
        }
        out << '\n';
      }
    }
    return;
  }
  Eigen::Index nnz = 0;
  for (Eigen::Index i = 0; i < m.size(); ++i) nnz += m.data()[i] != Scalar(0.0) ? 1 : 0;
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) == Scalar(0.0)) continue;
      out << i + 1 << ' ' << j + 1 << ' ';
      write_real(out, m(i, j).real());
      if (cplx) {
        out << ' ';
        write_real(out, m(i, j).imag());
      }
      out << '\n';
    }
  }
}

void write_matrix_market_file(const std::string& path, const Matrix& m, FieldKind field,
                              MatrixMarketFormat format) {
  std::ostringstream os;
  write_matrix_market(os, m, field, format);
  write_text_file(path, os.str());
}

Pencil read_pencil(const std::string& path_a, const std::string& path_b) {
  auto a = read_matrix_market_file(path_a);
  auto b = read_matrix_market_file(path_b);
  const FieldKind field =
      a.field == FieldKind::complex || b.field == FieldKind::complex ? FieldKind::complex
                                                                     : FieldKind::real;
  return Pencil(std::move(a.matrix), std::move(b.matrix), field);
}

Json RunManifest::to_json() const {
  Json j;
  j["command"] = command;
  j["config"] = config;
  j["seed"] = seed;
  j["versions"] = {{"singpencil", kVersion},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                 std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  if (timing) j["timing_seconds"] = *timing;
  return j;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Json scalar_json(Scalar z) { return Json::array({json_number(z.real()), json_number(z.imag())}); }

std::string format_lambda(Scalar z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return "inf";
  std::ostringstream os;
  os.precision(15);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

Json to_json(const SolveReport& rep, const RunManifest& manifest) {
  Json j = header("solve_report", manifest);
  const auto& c = rep.config;
  j["config"] = {{"method", to_string(c.method)},
                 {"field", to_string(c.field)},
                 {"tau", c.tau},
                 {"delta1", c.delta1},
                 {"delta2", c.delta2},
                 {"seed", c.seed},
                 {"resample_limit", c.resample_limit},
                 {"infinity_tol", c.infinity_tol}};
  j["n"] = rep.n;
  j["k_used"] = rep.k;
  j["nrank_used"] = rep.nrank;
  j["scale_a"] = rep.scale_a;
  j["scale_b"] = rep.scale_b;
  j["attempts"] = rep.attempts;
  Json fin = Json::array();
  for (const Scalar z : rep.finite_eigenvalues) fin.push_back(scalar_json(z));
  j["finite_eigenvalues"] = fin;
  Json recs = Json::array();
  for (const auto& r : rep.records) {
    Json e;
    e["alpha"] = scalar_json(r.alpha);
    e["beta"] = scalar_json(r.beta);
    e["lambda"] = format_lambda(r.lambda);
    e["sigma"] = r.sigma;
    e["tau"] = r.tau;
    e["gamma"] = r.gamma;
    e["class"] = to_string(r.cls);
    e["x"] = vector_json(r.x);
    e["y"] = vector_json(r.y);
    recs.push_back(std::move(e));
  }
  j["records"] = recs;
  Json pres = Json::array();
  for (const auto& [a, b] : rep.prescribed) pres.push_back({scalar_json(a), scalar_json(b)});
  const std::size_t k = rep.k;
  j["modification"] = {{"U", matrix_json(rep.draw.u(k))},
                       {"V", matrix_json(rep.draw.v(k))},
                       {"prescribed", pres}};
  if (c.method == Method::modify) {
    j["modification"]["D_A"] = vector_json(rep.draw.da);
    j["modification"]["D_B"] = vector_json(rep.draw.db);
  } else if (c.method == Method::augment) {
    j["modification"]["S_A"] = vector_json(rep.draw.sa);
    j["modification"]["S_B"] = vector_json(rep.draw.sb);
    j["modification"]["T_A"] = vector_json(rep.draw.ta);
    j["modification"]["T_B"] = vector_json(rep.draw.tb);
  }
  return j;
}

Json to_json(const Pencil& p, const GroundTruth& gt, const RunManifest& manifest) {
  Json j = header("ground_truth", manifest);
  j["spec"] = gt.spec.to_string();
  j["field"] = to_string(p.field);
  j["n"] = p.n();
  j["nrank"] = gt.spec.nrank();
  j["k"] = gt.spec.k();
  j["r"] = gt.spec.r();
  j["M"] = gt.spec.M();
  j["N"] = gt.spec.N();
  j["exact_transforms"] = gt.exact_transforms;
  j["m_rs_dim"] = gt.m_rs.cols();
  j["l_rs_dim"] = gt.l_rs.cols();
  Json eig = Json::array();
  for (const auto& e : gt.eigen) {
    Json row;
    row["lambda"] = scalar_json(e.lambda);
    row["gamma"] = e.gamma;
    row["ybx"] = scalar_json(e.ybx);
    row["x"] = vector_json(e.x);
    row["y"] = vector_json(e.y);
    eig.push_back(std::move(row));
  }
  j["eigenvalues"] = eig;
  if (gt.exact_transforms) {
    j["P_inv"] = matrix_json(gt.p_inv);
    j["Q"] = matrix_json(gt.q);
  }
  return j;
}

Json to_json(const McReport& rep, const RunManifest& manifest) {
  Json j = header("mc_report", manifest);
  j["trials"] = rep.trials;
  j["seed"] = {{"seed", rep.seed.seed}, {"stream", rep.seed.stream}};
  j["method"] = to_string(rep.method);
  j["field"] = to_string(rep.field);
  j["lambda"] = scalar_json(rep.lambda);
  j["model"] = {{"k", rep.model.k}, {"field", to_string(rep.model.field)}, {"kind", "product"},
                {"mean", rep.model.mean()}};
  j["empirical_mean"] = rep.empirical_mean;
  j["ks_stat"] = rep.ks_stat;
  j["ks_critical_1pct"] = rep.ks_critical;
  j["match_failures"] = rep.match_failures;
  j["histogram"] = {{"edges", rep.histogram.edges}, {"counts", rep.histogram.counts}};
  j["bound_table"] = bound_rows_json(rep.bound_table);
  return j;
}

Json to_json(const BoundsTable& table, const RunManifest& manifest) {
  Json j = header("bounds_table", manifest);
  j["k"] = table.k;
  j["field"] = to_string(table.field);
  j["trials"] = table.trials;
  j["rows"] = bound_rows_json(table.rows);
  return j;
}

Json to_json(const WeakCondEstimate& est, const RunManifest& manifest) {
  Json j = header("weak_condition", manifest);
  j["delta"] = est.delta;
  j["trials"] = est.trials;
  j["quantile_value"] = est.quantile_value;
  j["standard_error"] = est.standard_error;
  j["lower_bound"] = est.lower_bound;
  j["upper_bound"] = est.upper_bound;
  j["degenerate_draws"] = est.degenerate_draws;
  return j;
}

void write_csv(std::ostream& out, const RunManifest& manifest,
               const std::vector<std::string>& header_row,
               const std::vector<std::vector<std::string>>& rows) {
  out << "# " << manifest.to_json().dump() << "\r\n";
  auto emit = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(fields[i]);
    }
    out << "\r\n";
  };
  emit(header_row);
  for (const auto& r : rows) emit(r);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace singpencil
