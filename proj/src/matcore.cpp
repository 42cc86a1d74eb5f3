#include "singpencil/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "singpencil/errors.hpp"

extern "C" {
// LAPACK complex QZ driver.  Trailing arguments are the hidden Fortran
// character lengths.
void zggev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a,
            const int* lda, std::complex<double>* b, const int* ldb,
            std::complex<double>* alpha, std::complex<double>* beta, std::complex<double>* vl,
            const int* ldvl, std::complex<double>* vr, const int* ldvr,
            std::complex<double>* work, const int* lwork, double* rwork, int* info,
            std::size_t jobvl_len, std::size_t jobvr_len);
}

namespace singpencil {

namespace {

using ColMatrix = Eigen::MatrixXcd;

}  // namespace

std::string_view to_string(FieldKind f) { return f == FieldKind::real ? "real" : "complex"; }

FieldKind field_from_string(std::string_view s) {
  if (s == "real") return FieldKind::real;
  if (s == "complex") return FieldKind::complex;
  throw InvalidArgument("unknown field '" + std::string(s) + "'");
}

bool is_real_valued(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (m.data()[i].imag() != 0.0) return false;
  }
  return true;
}

void require_finite(const Matrix& m, std::string_view what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Scalar z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NonFiniteInput(std::string(what) + " has non-finite entries");
    }
  }
}

double one_norm(const Matrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    best = std::max(best, m.col(j).cwiseAbs().sum());
  }
  return best;
}

QrResult qr_positive(const Matrix& m) {
  require_finite(m, "qr_positive input");
  if (m.rows() < m.cols()) throw InvalidArgument("qr_positive requires rows >= cols");
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();

  const ColMatrix mc = m;
  Eigen::HouseholderQR<ColMatrix> qr(mc);
  ColMatrix q = qr.householderQ() * ColMatrix::Identity(rows, cols);
  ColMatrix r = qr.matrixQR().topRows(cols).template triangularView<Eigen::Upper>();

  for (Eigen::Index j = 0; j < cols; ++j) {
    const Scalar d = r(j, j);
    const double mag = std::abs(d);
    if (mag == 0.0) continue;
    const Scalar phase = d / mag;
    // Q D and D^* R with D = diag(phase) keep the product fixed.
    q.col(j) *= phase;
    r.row(j) *= std::conj(phase);
    r(j, j) = mag;
  }
  return {Matrix(q), Matrix(r)};
}

RealVector singular_values(const Matrix& m) {
  require_finite(m, "singular_values input");
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<ColMatrix> svd(m);
  return svd.singularValues();
}

std::size_t rank_with_tol(const Matrix& m, double tol) {
  if (tol < 0.0) throw InvalidArgument("rank tolerance must be non-negative");
  const RealVector s = singular_values(m);
  if (s.size() == 0) return 0;
  if (tol == 0.0) {
    tol = static_cast<double>(std::max(m.rows(), m.cols())) * kEps * s(0);
  }
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) ++r;
  }
  return r;
}

Matrix smallest_right_singular_vectors(const Matrix& m, std::size_t count) {
  require_finite(m, "nullspace input");
  const auto cols = static_cast<std::size_t>(m.cols());
  if (count > cols) throw InvalidArgument("requested more singular vectors than columns");
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols()).rightCols(count);
  Eigen::JacobiSVD<ColMatrix> svd(m, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(static_cast<Eigen::Index>(count));
}

Matrix nullspace_basis(const Matrix& m, double tol) {
  const std::size_t r = rank_with_tol(m, tol);
  return smallest_right_singular_vectors(m, static_cast<std::size_t>(m.cols()) - r);
}

Matrix range_basis(const Matrix& m, double rel_tol) {
  require_finite(m, "range_basis input");
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<ColMatrix> svd(m, Eigen::ComputeThinU);
  const RealVector& s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Scalar EigenTriple::lambda() const {
  if (is_infinite()) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  return alpha / beta;
}

void normalize_homogeneous(Scalar& alpha, Scalar& beta) {
  const double nrm = std::hypot(std::abs(alpha), std::abs(beta));
  if (nrm == 0.0) return;
  alpha /= nrm;
  beta /= nrm;
  const double bmag = std::abs(beta);
  if (bmag > 0.0) {
    const Scalar phase = std::conj(beta) / bmag;
    alpha *= phase;
    beta = bmag;
  } else {
    alpha = std::abs(alpha);
    beta = 0.0;
  }
}

double chordal_distance(Scalar alpha1, Scalar beta1, Scalar alpha2, Scalar beta2) {
  const double n1 = std::hypot(std::abs(alpha1), std::abs(beta1));
  const double n2 = std::hypot(std::abs(alpha2), std::abs(beta2));
  return std::abs(alpha1 * beta2 - beta1 * alpha2) / (n1 * n2);
}

std::vector<EigenTriple> generalized_eigen(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw InvalidArgument("generalized_eigen requires square matrices of equal size");
  }
  require_finite(a, "A");
  require_finite(b, "B");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return {};

  ColMatrix acm = a;
  ColMatrix bcm = b;
  Vector alpha(n), beta(n);
  ColMatrix vl(n, n), vr(n, n);
  std::vector<double> rwork(8 * static_cast<std::size_t>(n));
  int info = 0;
  int lwork = -1;
  std::complex<double> query;
  const char jobv = 'V';
  zggev_(&jobv, &jobv, &n, acm.data(), &n, bcm.data(), &n, alpha.data(), beta.data(),
         vl.data(), &n, vr.data(), &n, &query, &lwork, rwork.data(), &info, 1, 1);
  if (info != 0) throw SingularPencilSuspected("zggev workspace query failed");
  lwork = std::max(1, static_cast<int>(query.real()));
  std::vector<std::complex<double>> work(static_cast<std::size_t>(lwork));
  zggev_(&jobv, &jobv, &n, acm.data(), &n, bcm.data(), &n, alpha.data(), beta.data(),
         vl.data(), &n, vr.data(), &n, work.data(), &lwork, rwork.data(), &info, 1, 1);
  if (info != 0) {
    throw SingularPencilSuspected("QZ backend failed with info = " + std::to_string(info));
  }

  const double tol = kResidualConstant * n * kEps * (a.norm() + b.norm());
  std::vector<EigenTriple> out;
  out.reserve(static_cast<std::size_t>(n));
  int violations = 0;
  for (int i = 0; i < n; ++i) {
    // alpha = beta = 0 on the Schur diagonal is the QZ signature of a singular pencil.
    if (std::abs(alpha(i)) + std::abs(beta(i)) <= n * kEps * (a.norm() + b.norm())) {
      throw SingularPencilSuspected("QZ returned a 0/0 eigenvalue");
    }
    EigenTriple t;
    t.alpha = alpha(i);
    t.beta = beta(i);
    normalize_homogeneous(t.alpha, t.beta);
    t.right = vr.col(i);
    t.left = vl.col(i);
    const double rn = t.right.norm();
    const double ln = t.left.norm();
    if (rn == 0.0 || ln == 0.0) throw SingularPencilSuspected("QZ backend returned a zero eigenvector");
    t.right /= rn;
    t.left /= ln;
    const double res_r = ((t.beta * a - t.alpha * b) * t.right).norm();
    const double res_l = (t.left.adjoint() * (t.beta * a - t.alpha * b)).norm();
    if (res_r > tol || res_l > tol) ++violations;
    out.push_back(std::move(t));
  }
  if (2 * violations > n) {
    throw SingularPencilSuspected(std::to_string(violations) + " of " + std::to_string(n) +
                                  " eigenpairs exceed the residual bound");
  }
  return out;
}

}  // namespace singpencil
