#pragma once

// Reference quantities computed directly from a pencil or its ground truth,
// independent of the randomized solvers.

#include <cstddef>

#include "singpencil/kcf.hpp"
#include "singpencil/matcore.hpp"
#include "singpencil/pencil.hpp"
#include "singpencil/random.hpp"

namespace singpencil {

/// gamma(lambda) = sigma_max(Y^* B X) (1 + |lambda|^2)^(-1/2), with X and Y
/// orthonormal bases of the right and left kernels of A - lambda B.
/// Within those kernels Y1^* B X and Y^* B X1 vanish, so Y^* B X has rank one
/// and its only nonzero singular value is |y^* B x|.
/// tol == 0 uses 1e-9 sigma_max(A - lambda B) as the kernel cutoff.
/// Throws NotSimpleOrWrongRank unless both kernels have dimension k + 1.
double gamma_exact(const Pencil& p, Scalar lambda, std::size_t k, double tol = 0.0);

/// |alpha| = 1 / sqrt(1 + |(V^* X1)^{-1} V^* x|^2).
/// Throws DegenerateProjection when V^* X1 is numerically singular.
double alpha_closed_form(const Matrix& v, const Matrix& x1, const Vector& x);

struct SensitivityResult {
  double sigma = 0.0;
  Scalar numer_det;
  Scalar denom_det;
  bool degenerate = false;
};

/// |det(Y^*(E - lambda F)X)| / |y^* B x det(Y1^*(E - lambda F)X1)|.
/// degenerate is set when |denom_det| <= 1e-14 |Y1^*(E - lambda F)X1|_2^k;
/// sigma is then +inf.  For k = 0 the denominator determinant is 1.
SensitivityResult directional_sensitivity(const EigenGroundTruth& e, const Matrix& E,
                                          const Matrix& F);

struct WeakCondEstimate {
  double delta = 0.0;
  std::size_t trials = 0;
  double quantile_value = 0.0;
  /// Standard error of the quantile from the binomial order-statistic band.
  double standard_error = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::size_t degenerate_draws = 0;
};

/// Empirical (1 - delta)-quantile of sigma_{E,F}(lambda) over (E, F) uniform
/// on the unit sphere of pairs of n x n matrices, with the bracket
/// [1, sqrt(k)] / (sqrt(2 delta n^2) gamma).  For k = 0 the bracket is
/// [0, 1/gamma].  Requires delta <= k / (2 n^2) when k >= 1 and
/// trials >= 10 / delta.  Trial i uses rng.substream(i).
WeakCondEstimate weak_cond_estimate(const EigenGroundTruth& e, std::size_t n, double delta,
                                    std::size_t trials, const Rng& rng,
                                    FieldKind direction_field = FieldKind::complex);

}  // namespace singpencil
