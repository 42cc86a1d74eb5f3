#pragma once

// Finite eigenvalues of singular pencils through three randomized
// normal-rank completions: rank-completing modification, projection onto
// random complements, and augmentation by k extra rows and columns.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "singpencil/matcore.hpp"
#include "singpencil/pencil.hpp"
#include "singpencil/random.hpp"

namespace singpencil {

enum class Method { modify, project, augment };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct MethodConfig {
  Method method = Method::modify;
  FieldKind field = FieldKind::complex;
  double tau = 1e-2;
  double delta1 = std::sqrt(kEps);
  double delta2 = 100.0 * kEps;
  std::uint64_t seed = 0;
  int resample_limit = 10;
  /// Accepted eigenvalues with gamma_i <= delta2 count as infinite when
  /// |beta| is below this value; otherwise they are rejected.
  double infinity_tol = 1e-2;
  /// Chordal distance under which a record matches a prescribed eigenvalue.
  double prescribed_tol = 1e-6;

  void validate() const;
};

enum class EigClass { true_finite, true_infinite, prescribed, random_right, random_left, rejected };

std::string_view to_string(EigClass c);

/// One eigenvalue of the completed pencil.  (alpha, beta) refers to the
/// 1-norm scaled pencil; lambda is mapped back to the input pencil and is
/// +inf for beta = 0.  x and y are unit vectors in the ambient space of the
/// solved pencil (n for modify and project, n + k for augment).  gamma is
/// measured on the scaled pencil.  For project, sigma and tau are divided by
/// |alpha| + |beta|, which turns the delta1 (1 + |lambda|) test into a plain
/// delta1 test.
struct EigRecord {
  Scalar alpha;
  Scalar beta;
  Scalar lambda;
  Vector x;
  Vector y;
  double sigma = 0.0;
  double tau = 0.0;
  double gamma = 0.0;
  EigClass cls = EigClass::rejected;
};

/// Random quantities shared by all methods.  u_full = [U U_perp] and
/// v_full = [V V_perp] are unitary (orthogonal for the real field).
struct RandomDraw {
  Matrix u_full;
  Matrix v_full;
  Vector da, db;
  Vector sa, sb, ta, tb;

  Matrix u(std::size_t k) const { return u_full.leftCols(static_cast<Eigen::Index>(k)); }
  Matrix v(std::size_t k) const { return v_full.leftCols(static_cast<Eigen::Index>(k)); }
  Matrix u_perp(std::size_t k) const {
    return u_full.rightCols(u_full.cols() - static_cast<Eigen::Index>(k));
  }
  Matrix v_perp(std::size_t k) const {
    return v_full.rightCols(v_full.cols() - static_cast<Eigen::Index>(k));
  }
};

RandomDraw draw_random(std::size_t n, std::size_t k, FieldKind field, Rng& rng);

struct SolveReport {
  MethodConfig config;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t nrank = 0;
  double scale_a = 1.0;
  double scale_b = 1.0;
  std::vector<EigRecord> records;
  /// lambda of true_finite records, sorted by real then imaginary part.
  std::vector<Scalar> finite_eigenvalues;
  /// Prescribed eigenvalues in homogeneous form on the scaled pencil.
  std::vector<std::pair<Scalar, Scalar>> prescribed;
  RandomDraw draw;
  int attempts = 1;

  std::size_t count(EigClass c) const;
  /// The true_finite record nearest to lambda within rel_tol (1 + |lambda|),
  /// or nullptr.
  const EigRecord* find_true(Scalar lambda, double rel_tol = 1e-6) const;
};

/// Dispatches on cfg.method.  Draws come from rng; on a QZ failure a fresh
/// draw is taken, up to cfg.resample_limit draws, then GenericityFailure.
SolveReport solve(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng);
/// Same with Rng(cfg.seed).
SolveReport solve(const Pencil& p, std::size_t k, const MethodConfig& cfg);

SolveReport solve_modify(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng);
SolveReport solve_project(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng);
SolveReport solve_augment(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng);

/// Single attempt with a given draw.  Throws SingularPencilSuspected on QZ
/// failure and, for augment, DistinctnessFailure when the 2k prescribed
/// eigenvalues are not pairwise separated.
SolveReport solve_with(const Pencil& p, std::size_t k, const MethodConfig& cfg,
                       const RandomDraw& draw);

struct CrossCheckRow {
  Scalar lambda;
  double gamma_modify = 0.0;
  double gamma_project = 0.0;
  double gamma_augment = 0.0;
  double discrepancy = 0.0;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;
  double max_discrepancy = 0.0;
  SolveReport modify, project, augment;
};

/// Runs the three methods on one shared draw and pairs true finite
/// eigenvalues by nearest lambda.  A pairing whose nearest distance is not
/// below 1e-6 (1 + |lambda|), or whose runner-up is, raises MatchFailure.
CrossCheckReport cross_check(const Pencil& p, std::size_t k, std::uint64_t seed,
                             FieldKind field = FieldKind::complex);

}  // namespace singpencil
