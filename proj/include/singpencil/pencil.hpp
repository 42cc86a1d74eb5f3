#pragma once

#include <cstddef>
#include <vector>

#include "singpencil/matcore.hpp"
#include "singpencil/random.hpp"

namespace singpencil {

/// A - lambda B with square A, B of equal size over a declared field.
/// scale_a and scale_b record the divisors applied by scale_one_norm so
/// eigenvalues can be mapped back: lambda = lambda_scaled * scale_a / scale_b.
struct Pencil {
  Matrix A;
  Matrix B;
  FieldKind field = FieldKind::complex;
  bool scaled = false;
  double scale_a = 1.0;
  double scale_b = 1.0;

  Pencil() = default;
  /// Validates shapes, finiteness, and that a real field carries real data.
  Pencil(Matrix a, Matrix b, FieldKind f);

  std::size_t n() const { return static_cast<std::size_t>(A.rows()); }
};

/// Divides A and B by their 1-norms.  Idempotent on already-scaled input.
/// Throws ZeroMatrix when A or B vanishes.
Pencil scale_one_norm(const Pencil& p);

struct NormalRankInfo {
  std::size_t nrank = 0;
  std::size_t k = 0;
  std::vector<Scalar> sample_points;
  std::vector<std::size_t> per_point_rank;
};

/// max_i rank(A - xi_i B) with xi_i uniform on the annulus 0.5 <= |xi| <= 2.
/// tol == 0 selects the rank_with_tol default at each point.
NormalRankInfo normal_rank(const Pencil& p, Rng& rng, std::size_t samples = 3, double tol = 0.0);

}  // namespace singpencil
