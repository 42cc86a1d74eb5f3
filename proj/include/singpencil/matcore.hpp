#pragma once

// Dense complex kernels shared by every other module.  Matrices are always
// stored as complex doubles; a real field is represented by zero imaginary
// parts and tracked separately through FieldKind.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace singpencil {

using Scalar = std::complex<double>;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kEps = 2.220446049250313e-16;

enum class FieldKind { real, complex };

/// 1 for the real field, 2 for the complex field.
constexpr int phi(FieldKind f) { return f == FieldKind::real ? 1 : 2; }

std::string_view to_string(FieldKind f);
FieldKind field_from_string(std::string_view s);

/// True when every imaginary part is exactly zero.
bool is_real_valued(const Matrix& m);

void require_finite(const Matrix& m, std::string_view what);

/// Max column sum of absolute values.
double one_norm(const Matrix& m);

struct QrResult {
  Matrix q;  // rows x cols, orthonormal columns
  Matrix r;  // cols x cols, upper triangular, real non-negative diagonal
};

/// Thin QR with the diagonal of R made real and non-negative.
/// Requires rows >= cols.
QrResult qr_positive(const Matrix& m);

RealVector singular_values(const Matrix& m);

/// Number of singular values strictly above tol.  tol == 0 selects
/// max(rows, cols) * eps * sigma_max.
std::size_t rank_with_tol(const Matrix& m, double tol = 0.0);

/// Orthonormal basis of ker(m); cols x (cols - rank).
Matrix nullspace_basis(const Matrix& m, double tol = 0.0);

/// Right singular vectors belonging to the `count` smallest singular values.
Matrix smallest_right_singular_vectors(const Matrix& m, std::size_t count);

/// Orthonormal basis of range(m) at relative tolerance rel_tol.
Matrix range_basis(const Matrix& m, double rel_tol);

Matrix kron(const Matrix& a, const Matrix& b);

/// Eigenvalue in homogeneous form with unit-norm left/right eigenvectors.
/// (alpha, beta) lies on the unit sphere with beta real and non-negative.
struct EigenTriple {
  Scalar alpha;
  Scalar beta;
  Vector right;
  Vector left;

  bool is_infinite() const { return beta == Scalar(0.0); }
  /// alpha / beta; infinite eigenvalues yield a non-finite value.
  Scalar lambda() const;
};

/// Normalizes (alpha, beta) onto the unit sphere with beta >= 0.
void normalize_homogeneous(Scalar& alpha, Scalar& beta);

/// Residual tolerance factor c in |(beta A - alpha B) x| <= c n eps (|A|_F + |B|_F).
inline constexpr double kResidualConstant = 100.0;

/// Generalized eigenvalues of the regular pencil A - lambda B via a QZ
/// backend.  Left and right eigenvectors come from the same factorization.
/// Throws SingularPencilSuspected on backend failure or when more than n/2
/// eigenpairs violate the residual bound.
std::vector<EigenTriple> generalized_eigen(const Matrix& a, const Matrix& b);

/// Chordal distance between two homogeneous eigenvalues.
double chordal_distance(Scalar alpha1, Scalar beta1, Scalar alpha2, Scalar beta2);

}  // namespace singpencil
