#include "singpencil/kcf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "singpencil/errors.hpp"

namespace singpencil {

namespace {

using ColMatrix = Eigen::MatrixXcd;

double parse_real(std::string_view s, std::size_t column) {
  if (s.empty()) throw ParseError("expected a number", 1, column);
  std::size_t skip = 0;
  if (s.front() == '+') skip = 1;
  const std::size_t slash = s.find('/');
  auto number = [&](std::string_view part, std::size_t col) {
    double v = 0.0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    const auto res = std::from_chars(first, last, v);
    if (part.empty() || res.ec != std::errc() || res.ptr != last) {
      throw ParseError("malformed number '" + std::string(part) + "'", 1,
                       col + static_cast<std::size_t>(res.ptr - first));
    }
    return v;
  };
  if (slash == std::string_view::npos) return number(s.substr(skip), column + skip);
  const double num = number(s.substr(skip, slash - skip), column + skip);
  const double den = number(s.substr(slash + 1), column + slash + 1);
  if (den == 0.0) throw ParseError("zero denominator", 1, column + slash + 1);
  return num / den;
}

double parse_coefficient(std::string_view s, std::size_t column) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, column);
}

std::string format_scalar(Scalar z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0.0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

bool same_value(Scalar a, Scalar b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); }

Matrix orthonormal_columns(const Matrix& m) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  return qr_positive(m).q;
}

// Component of v orthogonal to the columns of the orthonormal basis q, normalized.
Vector orthogonal_unit(const Vector& v, const Matrix& q) {
  Vector w = v;
  if (q.cols() > 0) w -= q * (q.adjoint() * v);
  const double nrm = w.norm();
  if (nrm == 0.0) throw NotSimpleOrWrongRank("eigenvector lies in the reducing subspace");
  return w / nrm;
}

double cond2(const Matrix& m) {
  const RealVector s = singular_values(m);
  return s(s.size() - 1) == 0.0 ? INFINITY : s(0) / s(s.size() - 1);
}

Matrix inverse(const Matrix& m) { return Matrix(ColMatrix(m).partialPivLu().inverse()); }

void fill_exact(const Pencil& p, GroundTruth& gt) {
  const Matrix p_mat = inverse(gt.p_inv);
  const Matrix p_adj = p_mat.adjoint();
  const auto n = static_cast<Eigen::Index>(p.n());

  std::vector<Eigen::Index> rs_cols, ls_rows;
  for (const auto& br : gt.layout) {
    if (br.block.kind == KcfBlock::Kind::right_singular) {
      for (std::size_t j = 0; j < br.block.cols(); ++j) rs_cols.push_back(br.col_begin + j);
    } else if (br.block.kind == KcfBlock::Kind::left_singular) {
      for (std::size_t i = 0; i < br.block.rows(); ++i) ls_rows.push_back(br.row_begin + i);
    }
  }
  Matrix mr(n, static_cast<Eigen::Index>(rs_cols.size()));
  for (std::size_t j = 0; j < rs_cols.size(); ++j) mr.col(j) = gt.q.col(rs_cols[j]);
  Matrix lr(n, static_cast<Eigen::Index>(ls_rows.size()));
  for (std::size_t j = 0; j < ls_rows.size(); ++j) lr.col(j) = p_adj.col(ls_rows[j]);
  gt.m_rs = orthonormal_columns(mr);
  gt.l_rs = orthonormal_columns(lr);

  gt.eigen.clear();
  const std::size_t k = gt.spec.k();
  for (const Scalar lambda : gt.spec.simple_finite_eigenvalues()) {
    EigenGroundTruth e;
    e.lambda = lambda;
    Matrix x1(n, static_cast<Eigen::Index>(k));
    Matrix y1(n, static_cast<Eigen::Index>(k));
    Eigen::Index ir = 0, il = 0;
    Vector x_raw, y_raw;
    for (const auto& br : gt.layout) {
      const auto& b = br.block;
      if (b.kind == KcfBlock::Kind::right_singular) {
        // ker L_m(lambda) is spanned by (1, lambda, ..., lambda^m).
        Vector v = Vector::Zero(n);
        Scalar pw = 1.0;
        for (std::size_t j = 0; j <= b.size; ++j, pw *= lambda) v(br.col_begin + j) = pw;
        x1.col(ir++) = gt.q * v;
      } else if (b.kind == KcfBlock::Kind::left_singular) {
        Vector w = Vector::Zero(n);
        Scalar pw = 1.0;
        for (std::size_t i = 0; i <= b.size; ++i, pw *= std::conj(lambda)) w(br.row_begin + i) = pw;
        y1.col(il++) = p_adj * w;
      } else if (b.kind == KcfBlock::Kind::jordan && b.size == 1 && same_value(b.eigenvalue, lambda)) {
        x_raw = gt.q.col(br.col_begin);
        y_raw = p_adj.col(br.row_begin);
      }
    }
    e.x1 = orthonormal_columns(x1);
    e.y1 = orthonormal_columns(y1);
    e.x = orthogonal_unit(x_raw, e.x1);
    e.y = orthogonal_unit(y_raw, e.y1);
    e.ybx = e.y.dot(p.B * e.x);
    e.gamma = std::abs(e.ybx) / std::sqrt(1.0 + std::norm(lambda));
    gt.eigen.push_back(std::move(e));
  }
}

// Splits an orthonormal kernel basis into the part inside the reducing
// subspace and the single remaining direction.
void split_kernel(const Matrix& kernel, const Matrix& rs, Matrix& inside, Vector& outside) {
  Matrix proj = kernel;
  if (rs.cols() > 0) proj -= rs * (rs.adjoint() * kernel);
  Eigen::JacobiSVD<ColMatrix> svd(ColMatrix(proj), Eigen::ComputeFullV);
  const ColMatrix& v = svd.matrixV();
  outside = kernel * v.col(0);
  inside = kernel * v.rightCols(v.cols() - 1);
}

Matrix int_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

Pencil hmp8x8_pencil() {
  Matrix a = int_matrix({{-1, -1, -1, -1, -1, -1, -1, 0},
                         {1, 0, 0, 0, 0, 0, 0, 0},
                         {1, 2, 1, 1, 1, 1, 1, 0},
                         {1, 2, 3, 3, 3, 3, 3, 0},
                         {1, 2, 3, 2, 2, 2, 2, 0},
                         {1, 2, 3, 4, 3, 3, 3, -1},
                         {1, 2, 3, 4, 5, 5, 4, 1},
                         {0, 0, 0, 0, 2, 2, 1, 2}});
  Matrix b = int_matrix({{-2, -2, -2, -2, -2, -2, -2, 0},
                         {2, -1, -1, -1, -1, -1, -1, 0},
                         {2, 5, 5, 5, 5, 5, 5, 0},
                         {2, 5, 5, 4, 4, 4, 4, 0},
                         {2, 5, 5, 6, 5, 5, 5, -1},
                         {2, 5, 5, 6, 7, 7, 7, 1},
                         {2, 5, 5, 6, 7, 6, 6, 1},
                         {0, 0, 0, 0, 0, -1, -1, 0}});
  return Pencil(std::move(a), std::move(b), FieldKind::real);
}

Pencil delta25_pencil() {
  const Matrix a1 = int_matrix({{0, 0, 4, 1, 0}, {0, 5, 2, 0, 1}, {6, 3, 1, 0, 0},
                               {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
  const Matrix b1 = int_matrix({{0, 0, 7, 0, 0}, {0, 8, 0, -1, 0}, {9, 0, 0, 0, -1},
                               {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}});
  const Matrix c1 = int_matrix({{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {10, 0, 0, 0, 0},
                               {0, -1, 0, 0, 0}, {0, 0, -1, 0, 0}});
  const Matrix a2 = int_matrix({{0, 0, 7, 1, 0}, {0, 6, 9, 0, 1}, {5, 8, 10, 0, 0},
                               {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}});
  const Matrix b2 = int_matrix({{0, 0, 4, 0, 0}, {0, 3, 0, -1, 0}, {2, 0, 0, 0, -1},
                               {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}});
  const Matrix c2 = int_matrix({{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0},
                               {0, -1, 0, 0, 0}, {0, 0, -1, 0, 0}});
  Matrix delta0 = kron(b1, c2) - kron(c1, b2);
  Matrix delta1 = kron(c1, a2) - kron(a1, c2);
  return Pencil(std::move(delta1), std::move(delta0), FieldKind::real);
}

Pencil blockdiag10_pencil() {
  Matrix a = Matrix::Zero(10, 10);
  Matrix b = Matrix::Zero(10, 10);
  a(0, 4) = 1.0;
  b(0, 3) = 1.0;
  a.bottomRightCorner(5, 5) = int_matrix({{1, 0, 0, 0, 0}, {0, 2, 0, 0, 0}, {0, 0, 1, 1, 0},
                                          {0, 0, -1, 1, 0}, {0, 0, 0, 0, 1}});
  b.bottomRightCorner(5, 5) = int_matrix({{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0},
                                          {0, 0, 0, 1, 0}, {0, 0, 0, 0, 0}});
  return Pencil(std::move(a), std::move(b), FieldKind::real);
}

// Roots of the two-parameter determinant system, computed offline to 30 digits.
const std::vector<Scalar>& delta25_eigenvalues() {
  static const std::vector<Scalar> roots = {
      {-2.41827978195669058778559904426, 0.0},
      {-1.13308950501013230661532421457, 0.301155909290476921221826565393},
      {-1.13308950501013230661532421457, -0.301155909290476921221826565393},
      {-0.560850270703229043150349103579, 2.03554514190153853465278298526},
      {-0.560850270703229043150349103579, -2.03554514190153853465278298526},
      {0.0723592191700566653026732554565, 1.22487606716114254187620325719},
      {0.0723592191700566653026732554565, -1.22487606716114254187620325719},
      {0.0807204475216499783557995848222, 1.11232853300882324627866101851},
      {0.0807204475216499783557995848222, -1.11232853300882324627866101851}};
  return roots;
}

KcfSpec delta25_spec() {
  KcfSpec spec;
  for (const Scalar z : delta25_eigenvalues()) spec.blocks.push_back({KcfBlock::Kind::jordan, 1, z});
  for (std::size_t s : {4, 4, 2, 1, 1}) spec.blocks.push_back({KcfBlock::Kind::nilpotent, s, {}});
  for (int i = 0; i < 4; ++i) {
    spec.blocks.push_back({KcfBlock::Kind::right_singular, 0, {}});
    spec.blocks.push_back({KcfBlock::Kind::left_singular, 0, {}});
  }
  return spec;
}

}  // namespace

Scalar parse_scalar(std::string_view text, std::size_t column_offset) {
  std::string s;
  std::vector<std::size_t> col;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      s.push_back(text[i]);
      col.push_back(column_offset + i + 1);
    }
  }
  if (s.empty()) throw ParseError("empty value", 1, column_offset + 1);
  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_real(s, col.front()), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_coefficient(body, col.front())};
  return {parse_real(body.substr(0, split), col.front()),
          parse_coefficient(body.substr(split), col[split])};
}

std::size_t KcfBlock::rows() const {
  switch (kind) {
    case Kind::right_singular: return size;
    case Kind::left_singular: return size + 1;
    default: return size;
  }
}

std::size_t KcfBlock::cols() const {
  switch (kind) {
    case Kind::right_singular: return size + 1;
    case Kind::left_singular: return size;
    default: return size;
  }
}

std::string KcfBlock::to_string() const {
  switch (kind) {
    case Kind::jordan: return "J" + std::to_string(size) + "(" + format_scalar(eigenvalue) + ")";
    case Kind::nilpotent: return "N" + std::to_string(size);
    case Kind::right_singular: return "L" + std::to_string(size);
    case Kind::left_singular: return "LT" + std::to_string(size);
  }
  return "?";
}

KcfSpec KcfSpec::parse(std::string_view text) {
  KcfSpec spec;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_count = [&](const char* what) {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw ParseError(std::string("expected ") + what, 1, pos + 1);
    return static_cast<std::size_t>(std::stoul(std::string(text.substr(start, pos - start))));
  };
  skip_ws();
  if (pos == text.size()) throw ParseError("empty block list", 1, 1);
  while (true) {
    skip_ws();
    if (pos >= text.size()) throw ParseError("expected a block", 1, pos + 1);
    KcfBlock b;
    const char c = text[pos];
    if (c == 'J') {
      ++pos;
      b.kind = KcfBlock::Kind::jordan;
      b.size = read_count("Jordan block size");
      if (pos >= text.size() || text[pos] != '(') throw ParseError("expected '('", 1, pos + 1);
      const std::size_t close = text.find(')', pos);
      if (close == std::string_view::npos) throw ParseError("missing ')'", 1, text.size() + 1);
      b.eigenvalue = parse_scalar(text.substr(pos + 1, close - pos - 1), pos + 1);
      pos = close + 1;
    } else if (c == 'N') {
      ++pos;
      b.kind = KcfBlock::Kind::nilpotent;
      b.size = read_count("nilpotent block size");
    } else if (c == 'L') {
      ++pos;
      if (pos < text.size() && text[pos] == 'T') {
        ++pos;
        b.kind = KcfBlock::Kind::left_singular;
      } else {
        b.kind = KcfBlock::Kind::right_singular;
      }
      b.size = read_count("minimal index");
    } else {
      throw ParseError(std::string("unknown block '") + c + "'", 1, pos + 1);
    }
    if ((b.kind == KcfBlock::Kind::jordan || b.kind == KcfBlock::Kind::nilpotent) && b.size == 0) {
      throw ParseError("regular blocks need positive size", 1, pos);
    }
    spec.blocks.push_back(b);
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError("expected ','", 1, pos + 1);
    ++pos;
  }
  spec.validate();
  return spec;
}

std::string KcfSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += ",";
    out += blocks[i].to_string();
  }
  return out;
}

void KcfSpec::validate() const {
  std::size_t right = 0, left = 0;
  for (const auto& b : blocks) {
    if (b.kind == KcfBlock::Kind::right_singular) ++right;
    if (b.kind == KcfBlock::Kind::left_singular) ++left;
    if ((b.kind == KcfBlock::Kind::jordan || b.kind == KcfBlock::Kind::nilpotent) && b.size == 0) {
      throw InvalidArgument("regular blocks need positive size");
    }
  }
  if (right != left) {
    throw InvalidArgument("KCF needs as many L blocks as L^T blocks (" + std::to_string(right) +
                          " vs " + std::to_string(left) + ")");
  }
  if (n() == 0) throw InvalidArgument("KCF describes an empty pencil");
}

std::size_t KcfSpec::n() const {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.rows();
  return total;
}

std::size_t KcfSpec::k() const {
  return static_cast<std::size_t>(std::count_if(blocks.begin(), blocks.end(), [](const KcfBlock& b) {
    return b.kind == KcfBlock::Kind::right_singular;
  }));
}

std::size_t KcfSpec::r() const {
  std::size_t total = 0;
  for (const auto& b : blocks) {
    if (b.kind == KcfBlock::Kind::jordan || b.kind == KcfBlock::Kind::nilpotent) total += b.size;
  }
  return total;
}

std::size_t KcfSpec::M() const {
  std::size_t total = 0;
  for (const auto& b : blocks) {
    if (b.kind == KcfBlock::Kind::right_singular) total += b.size;
  }
  return total;
}

std::size_t KcfSpec::N() const {
  std::size_t total = 0;
  for (const auto& b : blocks) {
    if (b.kind == KcfBlock::Kind::left_singular) total += b.size;
  }
  return total;
}

std::vector<Scalar> KcfSpec::simple_finite_eigenvalues() const {
  std::vector<Scalar> out;
  for (const auto& b : blocks) {
    if (b.kind != KcfBlock::Kind::jordan || b.size != 1) continue;
    const auto hits = std::count_if(blocks.begin(), blocks.end(), [&](const KcfBlock& o) {
      return o.kind == KcfBlock::Kind::jordan && same_value(o.eigenvalue, b.eigenvalue);
    });
    if (hits == 1) out.push_back(b.eigenvalue);
  }
  return out;
}

FieldKind KcfSpec::natural_field() const {
  for (const auto& b : blocks) {
    if (b.kind == KcfBlock::Kind::jordan && b.eigenvalue.imag() != 0.0) return FieldKind::complex;
  }
  return FieldKind::real;
}

const EigenGroundTruth& GroundTruth::at(Scalar lambda, double tol) const {
  const EigenGroundTruth* best = nullptr;
  double best_dist = INFINITY;
  for (const auto& e : eigen) {
    const double d = std::abs(e.lambda - lambda);
    if (d < best_dist) {
      best_dist = d;
      best = &e;
    }
  }
  if (best == nullptr || best_dist > tol * (1.0 + std::abs(lambda))) {
    throw InvalidArgument("no ground truth for eigenvalue " + format_scalar(lambda));
  }
  return *best;
}

std::pair<Pencil, GroundTruth> assemble(const KcfSpec& spec) {
  spec.validate();
  const auto n = static_cast<Eigen::Index>(spec.n());
  Matrix a = Matrix::Zero(n, n);
  Matrix b = Matrix::Zero(n, n);
  GroundTruth gt;
  gt.spec = spec;
  std::size_t row = 0, col = 0;
  for (const auto& blk : spec.blocks) {
    gt.layout.push_back({blk, row, col});
    const auto r0 = static_cast<Eigen::Index>(row);
    const auto c0 = static_cast<Eigen::Index>(col);
    const auto s = static_cast<Eigen::Index>(blk.size);
    switch (blk.kind) {
      case KcfBlock::Kind::jordan:
        for (Eigen::Index i = 0; i < s; ++i) {
          a(r0 + i, c0 + i) = blk.eigenvalue;
          b(r0 + i, c0 + i) = 1.0;
          if (i + 1 < s) a(r0 + i, c0 + i + 1) = 1.0;
        }
        break;
      case KcfBlock::Kind::nilpotent:
        for (Eigen::Index i = 0; i < s; ++i) {
          a(r0 + i, c0 + i) = 1.0;
          if (i + 1 < s) b(r0 + i, c0 + i + 1) = 1.0;
        }
        break;
      case KcfBlock::Kind::right_singular:
        // L_m = [0 I] - lambda [I 0], m x (m+1).
        for (Eigen::Index i = 0; i < s; ++i) {
          a(r0 + i, c0 + i + 1) = 1.0;
          b(r0 + i, c0 + i) = 1.0;
        }
        break;
      case KcfBlock::Kind::left_singular:
        for (Eigen::Index i = 0; i < s; ++i) {
          a(r0 + i + 1, c0 + i) = 1.0;
          b(r0 + i, c0 + i) = 1.0;
        }
        break;
    }
    row += blk.rows();
    col += blk.cols();
  }
  Pencil p(std::move(a), std::move(b), spec.natural_field());
  gt.exact_transforms = true;
  gt.p_inv = Matrix::Identity(n, n);
  gt.q = Matrix::Identity(n, n);
  fill_exact(p, gt);
  return {std::move(p), std::move(gt)};
}

std::string_view to_string(DisguiseKind kind) {
  switch (kind) {
    case DisguiseKind::none: return "none";
    case DisguiseKind::orthogonal: return "orthogonal";
    case DisguiseKind::uniform_entries: return "uniform";
  }
  return "?";
}

DisguiseKind disguise_from_string(std::string_view s) {
  if (s == "none") return DisguiseKind::none;
  if (s == "orthogonal") return DisguiseKind::orthogonal;
  if (s == "uniform" || s == "uniform_entries") return DisguiseKind::uniform_entries;
  throw InvalidArgument("unknown disguise '" + std::string(s) + "'");
}

std::pair<Pencil, GroundTruth> disguise(const Pencil& p, const GroundTruth& gt, DisguiseKind kind,
                                        Rng& rng) {
  if (kind == DisguiseKind::none) return {p, gt};
  const std::size_t n = p.n();
  Matrix qd, zd;
  if (kind == DisguiseKind::orthogonal) {
    qd = stiefel_uniform(n, n, p.field, rng);
    zd = stiefel_uniform(n, n, p.field, rng);
  } else {
    constexpr int kMaxDraws = 10;
    constexpr double kMaxCond = 1e4;
    bool ok = false;
    for (int attempt = 0; attempt < kMaxDraws && !ok; ++attempt) {
      qd = Matrix(n, n);
      zd = Matrix(n, n);
      for (Eigen::Index i = 0; i < qd.size(); ++i) qd.data()[i] = rng.uniform();
      for (Eigen::Index i = 0; i < zd.size(); ++i) zd.data()[i] = rng.uniform();
      ok = cond2(qd) <= kMaxCond && cond2(zd) <= kMaxCond;
    }
    if (!ok) throw IllConditionedDisguise("no uniform transform with condition number <= 1e4");
  }
  Pencil out(qd * p.A * zd, qd * p.B * zd, p.field);
  GroundTruth g = gt;
  if (gt.exact_transforms) {
    g.p_inv = qd * gt.p_inv;
    g.q = inverse(zd) * gt.q;
    fill_exact(out, g);
  } else {
    g = ground_truth_numeric(out, gt.spec);
  }
  return {std::move(out), std::move(g)};
}

std::string_view to_string(PaperPencil id) {
  switch (id) {
    case PaperPencil::hmp8x8: return "hmp8x8";
    case PaperPencil::delta25: return "delta25";
    case PaperPencil::blockdiag10: return "blockdiag10";
  }
  return "?";
}

PaperPencil paper_pencil_from_string(std::string_view s) {
  if (s == "hmp8x8") return PaperPencil::hmp8x8;
  if (s == "delta25") return PaperPencil::delta25;
  if (s == "blockdiag10") return PaperPencil::blockdiag10;
  throw InvalidArgument("unknown paper pencil '" + std::string(s) + "'");
}

std::pair<Pencil, GroundTruth> paper_pencil(PaperPencil id) {
  Pencil p;
  KcfSpec spec;
  switch (id) {
    case PaperPencil::hmp8x8:
      p = hmp8x8_pencil();
      spec = KcfSpec::parse("J1(1/2),J1(1/3),N1,L0,L1,LT0,LT2");
      break;
    case PaperPencil::delta25:
      p = delta25_pencil();
      spec = delta25_spec();
      break;
    case PaperPencil::blockdiag10:
      // Structure of the matrices exactly as printed, which also carry J1(1).
      p = blockdiag10_pencil();
      spec = KcfSpec::parse("J1(1),J1(2),J1(1+1i),J1(1-1i),N1,L0,L0,L0,L1,LT0,LT0,LT0,LT0");
      break;
  }
  GroundTruth gt = ground_truth_numeric(p, spec);
  return {std::move(p), std::move(gt)};
}

Matrix reducing_subspace_numeric(const Matrix& a, const Matrix& b, std::size_t k, Rng& rng) {
  const auto n = a.rows();
  if (k == 0) return Matrix(n, 0);
  Matrix all(n, static_cast<Eigen::Index>(2 * n * k));
  for (Eigen::Index s = 0; s < 2 * n; ++s) {
    const double r = 0.5 + 1.5 * rng.uniform();
    const Scalar z = std::polar(r, 2.0 * M_PI * rng.uniform());
    all.middleCols(s * static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
        smallest_right_singular_vectors(a - z * b, k);
  }
  return range_basis(all, 1e-8);
}

EigenGroundTruth eigen_truth_numeric(const Pencil& p, Scalar lambda, std::size_t k,
                                     const Matrix& m_rs, const Matrix& l_rs) {
  const Matrix m = p.A - lambda * p.B;
  const RealVector s = singular_values(m);
  const double tol = 1e-9 * s(0);
  const Matrix x = nullspace_basis(m, tol);
  const Matrix y = nullspace_basis(m.adjoint(), tol);
  if (static_cast<std::size_t>(x.cols()) != k + 1 || static_cast<std::size_t>(y.cols()) != k + 1) {
    throw NotSimpleOrWrongRank("kernel at lambda has dimension " + std::to_string(x.cols()) +
                               ", expected " + std::to_string(k + 1));
  }
  EigenGroundTruth e;
  e.lambda = lambda;
  split_kernel(x, m_rs, e.x1, e.x);
  split_kernel(y, l_rs, e.y1, e.y);
  e.ybx = e.y.dot(p.B * e.x);
  e.gamma = std::abs(e.ybx) / std::sqrt(1.0 + std::norm(lambda));
  return e;
}

GroundTruth ground_truth_numeric(const Pencil& p, const KcfSpec& spec) {
  spec.validate();
  if (spec.n() != p.n()) throw InvalidArgument("KCF size does not match the pencil");
  GroundTruth gt;
  gt.spec = spec;
  gt.exact_transforms = false;
  // Fixed stream so the reference data is a function of the pencil alone.
  Rng rng(0x6b6366u, 0);
  const std::size_t k = spec.k();
  gt.m_rs = reducing_subspace_numeric(p.A, p.B, k, rng);
  const Matrix aa = p.A.adjoint();
  const Matrix ba = p.B.adjoint();
  gt.l_rs = reducing_subspace_numeric(aa, ba, k, rng);
  for (const Scalar lambda : spec.simple_finite_eigenvalues()) {
    gt.eigen.push_back(eigen_truth_numeric(p, lambda, k, gt.m_rs, gt.l_rs));
  }
  return gt;
}

}  // namespace singpencil
