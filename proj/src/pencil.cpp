#include "singpencil/pencil.hpp"

#include <algorithm>
#include <cmath>

#include "singpencil/errors.hpp"

namespace singpencil {

Pencil::Pencil(Matrix a, Matrix b, FieldKind f) : A(std::move(a)), B(std::move(b)), field(f) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows()) {
    throw InvalidArgument("pencil matrices must be square and of equal size");
  }
  if (A.rows() == 0) throw InvalidArgument("pencil must be at least 1x1");
  require_finite(A, "A");
  require_finite(B, "B");
  if (field == FieldKind::real && !(is_real_valued(A) && is_real_valued(B))) {
    throw InvalidArgument("real pencil has complex entries");
  }
}

Pencil scale_one_norm(const Pencil& p) {
  if (p.scaled) return p;
  const double na = one_norm(p.A);
  const double nb = one_norm(p.B);
  if (na == 0.0) throw ZeroMatrix("A is the zero matrix");
  if (nb == 0.0) throw ZeroMatrix("B is the zero matrix");
  Pencil out = p;
  out.A = p.A / na;
  out.B = p.B / nb;
  out.scaled = true;
  out.scale_a = p.scale_a * na;
  out.scale_b = p.scale_b * nb;
  return out;
}

NormalRankInfo normal_rank(const Pencil& p, Rng& rng, std::size_t samples, double tol) {
  if (samples == 0) throw InvalidArgument("normal_rank needs at least one sample");
  NormalRankInfo info;
  for (std::size_t i = 0; i < samples; ++i) {
    // Uniform by area on the annulus.
    const double r = std::sqrt(0.25 + rng.uniform() * (4.0 - 0.25));
    const double theta = 2.0 * M_PI * rng.uniform();
    const Scalar xi = std::polar(r, theta);
    const std::size_t rk = rank_with_tol(p.A - xi * p.B, tol);
    info.sample_points.push_back(xi);
    info.per_point_rank.push_back(rk);
  }
  info.nrank = *std::max_element(info.per_point_rank.begin(), info.per_point_rank.end());
  info.k = p.n() - info.nrank;
  return info;
}

}  // namespace singpencil
