#include "singpencil/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "singpencil/errors.hpp"
#include "singpencil/parallel.hpp"

namespace singpencil {

namespace {

using ColMatrix = Eigen::MatrixXcd;

Scalar determinant(const Matrix& m) {
  if (m.rows() == 0) return 1.0;
  return ColMatrix(m).partialPivLu().determinant();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

}  // namespace

double gamma_exact(const Pencil& p, Scalar lambda, std::size_t k, double tol) {
  const Matrix m = p.A - lambda * p.B;
  if (tol == 0.0) tol = 1e-9 * spectral_norm(m);
  const Matrix x = nullspace_basis(m, tol);
  const Matrix y = nullspace_basis(m.adjoint(), tol);
  if (static_cast<std::size_t>(x.cols()) != k + 1 || static_cast<std::size_t>(y.cols()) != k + 1) {
    throw NotSimpleOrWrongRank("kernel dimensions " + std::to_string(x.cols()) + "/" +
                               std::to_string(y.cols()) + " at lambda, expected " +
                               std::to_string(k + 1));
  }
  const Matrix ybx = y.adjoint() * p.B * x;
  return spectral_norm(ybx) / std::sqrt(1.0 + std::norm(lambda));
}

double alpha_closed_form(const Matrix& v, const Matrix& x1, const Vector& x) {
  if (v.rows() != x1.rows() || v.rows() != x.size() || v.cols() != x1.cols()) {
    throw InvalidArgument("alpha_closed_form: dimension mismatch");
  }
  const Vector vx = v.adjoint() * x;
  if (x1.cols() == 0) return 1.0;
  const Matrix vx1 = v.adjoint() * x1;
  const RealVector s = singular_values(vx1);
  if (s(s.size() - 1) <= 1e-12 * v.norm() * x1.norm()) {
    throw DegenerateProjection("V^* X1 is numerically singular");
  }
  const Vector z = ColMatrix(vx1).partialPivLu().solve(vx);
  return 1.0 / std::sqrt(1.0 + z.squaredNorm());
}

SensitivityResult directional_sensitivity(const EigenGroundTruth& e, const Matrix& E,
                                          const Matrix& F) {
  const auto n = e.x.size();
  if (E.rows() != n || E.cols() != n || F.rows() != n || F.cols() != n || e.y.size() != n) {
    throw InvalidArgument("directional_sensitivity: dimension mismatch");
  }
  const auto k = e.x1.cols();
  Matrix xx(n, k + 1), yy(n, k + 1);
  xx << e.x1, e.x;
  yy << e.y1, e.y;
  const Matrix d = E - e.lambda * F;
  const Matrix full = yy.adjoint() * d * xx;
  const Matrix inner = full.topLeftCorner(k, k);

  SensitivityResult out;
  out.numer_det = determinant(full);
  out.denom_det = determinant(inner);
  const double scale = k == 0 ? 1.0 : std::pow(spectral_norm(inner), static_cast<double>(k));
  out.degenerate = std::abs(out.denom_det) <= 1e-14 * scale;
  out.sigma = out.degenerate ? INFINITY : std::abs(out.numer_det / (e.ybx * out.denom_det));
  return out;
}

WeakCondEstimate weak_cond_estimate(const EigenGroundTruth& e, std::size_t n, double delta,
                                    std::size_t trials, const Rng& rng, FieldKind direction_field) {
  const std::size_t k = e.k();
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  if (k >= 1 && delta > static_cast<double>(k) / (2.0 * n2) * (1.0 + 1e-12)) {
    throw InvalidArgument("delta must not exceed k / (2 n^2)");
  }
  if (static_cast<double>(trials) < 10.0 / delta) {
    throw InsufficientTrials("weak_cond_estimate needs at least 10 / delta trials");
  }
  if (static_cast<std::size_t>(e.x.size()) != n) throw InvalidArgument("n does not match ground truth");

  std::vector<double> sigma(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng local = rng.substream(i);
    const auto [E, F] = sphere_direction(n, local, direction_field);
    sigma[i] = directional_sensitivity(e, E, F).sigma;
  });

  WeakCondEstimate out;
  out.delta = delta;
  out.trials = trials;
  out.degenerate_draws =
      static_cast<std::size_t>(std::count_if(sigma.begin(), sigma.end(), [](double s) { return !std::isfinite(s); }));
  std::sort(sigma.begin(), sigma.end());
  const double nt = static_cast<double>(trials);
  const double p = 1.0 - delta;
  auto order_stat = [&](double pos) {
    const auto idx = static_cast<std::size_t>(std::clamp(std::ceil(pos) - 1.0, 0.0, nt - 1.0));
    return sigma[idx];
  };
  out.quantile_value = order_stat(p * nt);
  const double band = std::sqrt(nt * p * (1.0 - p));
  out.standard_error = 0.5 * (order_stat(p * nt + band) - order_stat(p * nt - band));

  const double inv_gamma = 1.0 / e.gamma;
  if (k == 0) {
    out.lower_bound = 0.0;
    out.upper_bound = inv_gamma;
  } else {
    const double base = 1.0 / std::sqrt(2.0 * delta * n2);
    out.lower_bound = base * inv_gamma;
    out.upper_bound = std::sqrt(static_cast<double>(k)) * base * inv_gamma;
  }
  return out;
}

}  // namespace singpencil
