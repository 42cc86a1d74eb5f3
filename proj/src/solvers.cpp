#include "singpencil/solvers.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "singpencil/errors.hpp"

namespace singpencil {

namespace {

struct Thresholds {
  double delta1, delta2, infinity_tol, prescribed_tol;
};

Vector diagonal_draw(std::size_t k, FieldKind field, Rng& rng) {
  Vector d(static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = rng.field_normal(field);
  return d;
}

Matrix diag(const Vector& d) { return d.asDiagonal(); }

bool near_prescribed(Scalar alpha, Scalar beta, const std::vector<std::pair<Scalar, Scalar>>& pres,
                     double tol) {
  for (const auto& [a, b] : pres) {
    if (chordal_distance(alpha, beta, a, b) < tol) return true;
  }
  return false;
}

EigClass classify(const EigRecord& r, const Thresholds& th,
                  const std::vector<std::pair<Scalar, Scalar>>& pres) {
  if (std::max(r.sigma, r.tau) < th.delta1) {
    if (r.gamma > th.delta2) return EigClass::true_finite;
    if (std::abs(r.beta) <= th.infinity_tol) return EigClass::true_infinite;
    return EigClass::rejected;
  }
  if (near_prescribed(r.alpha, r.beta, pres, th.prescribed_tol)) return EigClass::prescribed;
  if (r.sigma < th.delta1) return EigClass::random_right;
  if (r.tau < th.delta1) return EigClass::random_left;
  return EigClass::rejected;
}

void check_k(const Pencil& p, std::size_t k) {
  if (k < 1 || k >= p.n()) {
    throw InvalidArgument("k must satisfy 1 <= k < n (got k = " + std::to_string(k) + ")");
  }
}

Scalar original_lambda(Scalar alpha, Scalar beta, double scale_a, double scale_b) {
  if (beta == Scalar(0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
  return alpha / beta * (scale_a / scale_b);
}

void finish(SolveReport& rep) {
  const Thresholds th{rep.config.delta1, rep.config.delta2, rep.config.infinity_tol,
                      rep.config.prescribed_tol};
  for (auto& r : rep.records) {
    r.lambda = original_lambda(r.alpha, r.beta, rep.scale_a, rep.scale_b);
    r.cls = classify(r, th, rep.prescribed);
    if (r.cls == EigClass::true_infinite) r.lambda = {std::numeric_limits<double>::infinity(), 0.0};
    if (r.cls == EigClass::true_finite) rep.finite_eigenvalues.push_back(r.lambda);
  }
  std::sort(rep.finite_eigenvalues.begin(), rep.finite_eigenvalues.end(),
            [](Scalar a, Scalar b) {
              return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
            });
}

void solve_modify_into(const Pencil& s, std::size_t k, SolveReport& rep) {
  const auto& d = rep.draw;
  const Matrix u = d.u(k);
  const Matrix v = d.v(k);
  const double tau = rep.config.tau;
  const Matrix ua = u * diag(d.da) * v.adjoint();
  const Matrix ub = u * diag(d.db) * v.adjoint();
  const auto triples = generalized_eigen(s.A + tau * ua, s.B + tau * ub);
  for (Eigen::Index i = 0; i < d.da.size(); ++i) {
    Scalar a = d.da(i), b = d.db(i);
    normalize_homogeneous(a, b);
    rep.prescribed.emplace_back(a, b);
  }
  for (const auto& t : triples) {
    EigRecord r;
    r.alpha = t.alpha;
    r.beta = t.beta;
    r.x = t.right;
    r.y = t.left;
    r.sigma = (v.adjoint() * t.right).norm();
    r.tau = (u.adjoint() * t.left).norm();
    // The original B, not the modified one.
    r.gamma = std::abs(t.left.dot(s.B * t.right)) * std::abs(t.beta);
    rep.records.push_back(std::move(r));
  }
}

void solve_project_into(const Pencil& s, std::size_t k, SolveReport& rep) {
  const auto& d = rep.draw;
  const Matrix u = d.u(k);
  const Matrix v = d.v(k);
  const Matrix up = d.u_perp(k);
  const Matrix vp = d.v_perp(k);
  const Matrix bvp = s.B * vp;
  const Matrix avp = s.A * vp;
  const auto triples = generalized_eigen(up.adjoint() * avp, up.adjoint() * bvp);
  const Matrix ua = u.adjoint() * s.A;
  const Matrix ub = u.adjoint() * s.B;
  const Matrix av = s.A * v;
  const Matrix bv = s.B * v;
  for (const auto& t : triples) {
    EigRecord r;
    r.alpha = t.alpha;
    r.beta = t.beta;
    r.x = vp * t.right;
    r.y = up * t.left;
    const double norm1 = std::abs(t.alpha) + std::abs(t.beta);
    r.sigma = ((t.beta * ua - t.alpha * ub) * r.x).norm() / norm1;
    r.tau = (r.y.adjoint() * (t.beta * av - t.alpha * bv)).norm() / norm1;
    r.gamma = std::abs(r.y.dot(bvp * t.right)) * std::abs(t.beta);
    rep.records.push_back(std::move(r));
  }
}

void solve_augment_into(const Pencil& s, std::size_t k, SolveReport& rep) {
  const auto& d = rep.draw;
  const auto n = static_cast<Eigen::Index>(s.n());
  const auto kk = static_cast<Eigen::Index>(k);
  std::vector<std::pair<Scalar, Scalar>> pres;
  for (Eigen::Index i = 0; i < kk; ++i) {
    Scalar a = d.sa(i), b = d.sb(i);
    normalize_homogeneous(a, b);
    pres.emplace_back(a, b);
  }
  for (Eigen::Index i = 0; i < kk; ++i) {
    Scalar a = d.ta(i), b = d.tb(i);
    normalize_homogeneous(a, b);
    pres.emplace_back(a, b);
  }
  for (std::size_t i = 0; i < pres.size(); ++i) {
    for (std::size_t j = i + 1; j < pres.size(); ++j) {
      if (chordal_distance(pres[i].first, pres[i].second, pres[j].first, pres[j].second) < 1e-6) {
        throw DistinctnessFailure("prescribed augmentation eigenvalues are not distinct");
      }
    }
  }
  rep.prescribed = pres;

  const Matrix u = d.u(k);
  const Matrix v = d.v(k);
  Matrix aa = Matrix::Zero(n + kk, n + kk);
  Matrix ba = Matrix::Zero(n + kk, n + kk);
  aa.topLeftCorner(n, n) = s.A;
  ba.topLeftCorner(n, n) = s.B;
  aa.topRightCorner(n, kk) = u * diag(d.ta);
  ba.topRightCorner(n, kk) = u * diag(d.tb);
  aa.bottomLeftCorner(kk, n) = diag(d.sa) * v.adjoint();
  ba.bottomLeftCorner(kk, n) = diag(d.sb) * v.adjoint();
  const auto triples = generalized_eigen(aa, ba);
  for (const auto& t : triples) {
    EigRecord r;
    r.alpha = t.alpha;
    r.beta = t.beta;
    r.x = t.right;
    r.y = t.left;
    r.sigma = t.right.tail(kk).norm();
    r.tau = t.left.tail(kk).norm();
    r.gamma = std::abs(t.left.head(n).dot(s.B * t.right.head(n))) * std::abs(t.beta);
    rep.records.push_back(std::move(r));
  }
}

SolveReport solve_method(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng,
                         Method method) {
  cfg.validate();
  check_k(p, k);
  MethodConfig c = cfg;
  c.method = method;
  bool distinctness = false;
  for (int attempt = 1; attempt <= c.resample_limit; ++attempt) {
    const RandomDraw draw = draw_random(p.n(), k, c.field, rng);
    try {
      SolveReport rep = solve_with(p, k, c, draw);
      rep.attempts = attempt;
      return rep;
    } catch (const DistinctnessFailure&) {
      distinctness = true;
    } catch (const SingularPencilSuspected&) {
      distinctness = false;
    }
  }
  if (distinctness) {
    throw DistinctnessFailure("no admissible augmentation after " +
                              std::to_string(c.resample_limit) + " draws");
  }
  throw GenericityFailure("QZ failed on " + std::to_string(c.resample_limit) + " fresh draws");
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::modify: return "modify";
    case Method::project: return "project";
    case Method::augment: return "augment";
  }
  return "?";
}

Method method_from_string(std::string_view s) {
  if (s == "modify") return Method::modify;
  if (s == "project") return Method::project;
  if (s == "augment") return Method::augment;
  throw InvalidArgument("unknown method '" + std::string(s) + "'");
}

std::string_view to_string(EigClass c) {
  switch (c) {
    case EigClass::true_finite: return "true_finite";
    case EigClass::true_infinite: return "true_infinite";
    case EigClass::prescribed: return "prescribed";
    case EigClass::random_right: return "random_right";
    case EigClass::random_left: return "random_left";
    case EigClass::rejected: return "rejected";
  }
  return "?";
}

void MethodConfig::validate() const {
  if (tau == 0.0 || !std::isfinite(tau)) throw InvalidArgument("tau must be finite and nonzero");
  if (!(delta1 > 0.0) || !(delta2 > 0.0)) throw InvalidArgument("delta1 and delta2 must be positive");
  if (resample_limit < 1) throw InvalidArgument("resample_limit must be at least 1");
}

RandomDraw draw_random(std::size_t n, std::size_t k, FieldKind field, Rng& rng) {
  RandomDraw d;
  d.u_full = stiefel_uniform(n, n, field, rng);
  d.v_full = stiefel_uniform(n, n, field, rng);
  d.da = diagonal_draw(k, field, rng);
  d.db = diagonal_draw(k, field, rng);
  d.sa = diagonal_draw(k, field, rng);
  d.sb = diagonal_draw(k, field, rng);
  d.ta = diagonal_draw(k, field, rng);
  d.tb = diagonal_draw(k, field, rng);
  return d;
}

std::size_t SolveReport::count(EigClass c) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [c](const EigRecord& r) { return r.cls == c; }));
}

const EigRecord* SolveReport::find_true(Scalar lambda, double rel_tol) const {
  const EigRecord* best = nullptr;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    if (r.cls != EigClass::true_finite) continue;
    const double dist = std::abs(r.lambda - lambda);
    if (dist < best_dist) {
      best_dist = dist;
      best = &r;
    }
  }
  if (best_dist > rel_tol * (1.0 + std::abs(lambda))) return nullptr;
  return best;
}

SolveReport solve_with(const Pencil& p, std::size_t k, const MethodConfig& cfg,
                       const RandomDraw& draw) {
  cfg.validate();
  check_k(p, k);
  const Pencil s = scale_one_norm(p);
  SolveReport rep;
  rep.config = cfg;
  rep.n = p.n();
  rep.k = k;
  rep.nrank = p.n() - k;
  rep.scale_a = s.scale_a;
  rep.scale_b = s.scale_b;
  rep.draw = draw;
  switch (cfg.method) {
    case Method::modify: solve_modify_into(s, k, rep); break;
    case Method::project: solve_project_into(s, k, rep); break;
    case Method::augment: solve_augment_into(s, k, rep); break;
  }
  finish(rep);
  return rep;
}

SolveReport solve(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng) {
  return solve_method(p, k, cfg, rng, cfg.method);
}

SolveReport solve(const Pencil& p, std::size_t k, const MethodConfig& cfg) {
  Rng rng(cfg.seed);
  return solve(p, k, cfg, rng);
}

SolveReport solve_modify(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng) {
  return solve_method(p, k, cfg, rng, Method::modify);
}

SolveReport solve_project(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng) {
  return solve_method(p, k, cfg, rng, Method::project);
}

SolveReport solve_augment(const Pencil& p, std::size_t k, const MethodConfig& cfg, Rng& rng) {
  return solve_method(p, k, cfg, rng, Method::augment);
}

CrossCheckReport cross_check(const Pencil& p, std::size_t k, std::uint64_t seed, FieldKind field) {
  check_k(p, k);
  MethodConfig cfg;
  cfg.field = field;
  cfg.seed = seed;
  Rng rng(seed);
  CrossCheckReport out;
  bool done = false;
  for (int attempt = 0; attempt < cfg.resample_limit && !done; ++attempt) {
    const RandomDraw draw = draw_random(p.n(), k, field, rng);
    try {
      cfg.method = Method::modify;
      out.modify = solve_with(p, k, cfg, draw);
      cfg.method = Method::project;
      out.project = solve_with(p, k, cfg, draw);
      cfg.method = Method::augment;
      out.augment = solve_with(p, k, cfg, draw);
      done = true;
    } catch (const SingularPencilSuspected&) {
    } catch (const DistinctnessFailure&) {
    }
  }
  if (!done) throw GenericityFailure("cross_check found no admissible shared draw");

  auto pair = [](const SolveReport& rep, Scalar lambda) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    const EigRecord* hit = nullptr;
    for (const auto& r : rep.records) {
      if (r.cls != EigClass::true_finite) continue;
      const double dist = std::abs(r.lambda - lambda);
      if (dist < best) {
        second = best;
        best = dist;
        hit = &r;
      } else if (dist < second) {
        second = dist;
      }
    }
    const double guard = 1e-6 * (1.0 + std::abs(lambda));
    if (hit == nullptr || best >= guard || second < guard) {
      throw MatchFailure("cannot pair eigenvalue across methods");
    }
    return hit->gamma;
  };

  for (const auto& r : out.modify.records) {
    if (r.cls != EigClass::true_finite) continue;
    CrossCheckRow row;
    row.lambda = r.lambda;
    row.gamma_modify = r.gamma;
    row.gamma_project = pair(out.project, r.lambda);
    row.gamma_augment = pair(out.augment, r.lambda);
    row.discrepancy = std::max(std::abs(row.gamma_modify - row.gamma_project),
                               std::abs(row.gamma_modify - row.gamma_augment));
    out.max_discrepancy = std::max(out.max_discrepancy, row.discrepancy);
    out.rows.push_back(row);
  }
  if (out.rows.size() != out.project.count(EigClass::true_finite) ||
      out.rows.size() != out.augment.count(EigClass::true_finite)) {
    throw MatchFailure("methods disagree on the number of true finite eigenvalues");
  }
  return out;
}

}  // namespace singpencil
