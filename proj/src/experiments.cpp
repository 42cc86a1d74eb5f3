#include "singpencil/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "singpencil/errors.hpp"
#include "singpencil/parallel.hpp"

namespace singpencil {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ks_against(const std::vector<double>& sorted, int k, FieldKind field) {
  return ks_statistic(sorted, [&](double x) { return cdf_product(x, k, field); });
}

}  // namespace

Histogram make_histogram(const std::vector<double>& samples, std::size_t bins) {
  if (bins == 0) throw InvalidArgument("histogram needs at least one bin");
  Histogram h;
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = static_cast<double>(i) / bins;
  h.counts.assign(bins, 0);
  for (const double s : samples) {
    const auto b = static_cast<std::size_t>(std::clamp(s, 0.0, 1.0) * bins);
    ++h.counts[std::min(b, bins - 1)];
  }
  return h;
}

const std::vector<double>& default_t_grid() {
  static const std::vector<double> grid = {1e-5, 1e-4, 1e-3, 1e-2};
  return grid;
}

std::vector<BoundRow> bound_rows(const std::vector<double>& sorted_samples, int k, FieldKind field,
                                 const std::vector<double>& t_grid) {
  const double n = static_cast<double>(sorted_samples.size());
  std::vector<BoundRow> rows;
  for (const double t : t_grid) {
    if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("t grid must lie in (0, 1]");
    BoundRow row;
    row.t = t;
    const auto below = std::lower_bound(sorted_samples.begin(), sorted_samples.end(), t) -
                       sorted_samples.begin();
    row.empirical = n > 0 ? static_cast<double>(below) / n : 0.0;
    row.standard_error = n > 0 ? std::sqrt(row.empirical * (1.0 - row.empirical) / n) : 0.0;
    row.simple_upper = tail_bound(t, k, field, TailBoundKind::simple_upper);
    row.refined_upper = tail_bound(t, k, field, TailBoundKind::refined_upper);
    row.lower = tail_bound_applies(k, field, TailBoundKind::lower)
                    ? tail_bound(t, k, field, TailBoundKind::lower)
                    : kNaN;
    rows.push_back(row);
  }
  return rows;
}

McReport mc_ratio(const Pencil& p, const GroundTruth& gt, Scalar lambda, Method method,
                  FieldKind field, std::size_t trials, const Rng& rng) {
  if (trials < 1000) throw InsufficientTrials("mc_ratio needs at least 1000 trials");
  const auto& e = gt.at(lambda);
  const std::size_t k = gt.spec.k();
  const Pencil s = scale_one_norm(p);
  // gamma(lambda) of the scaled pencil, whose eigenvalue is lambda scale_b / scale_a.
  const Scalar lambda_s = e.lambda * (s.scale_b / s.scale_a);
  const double gamma_s = std::abs(e.ybx) / s.scale_b / std::sqrt(1.0 + std::norm(lambda_s));

  MethodConfig cfg;
  cfg.method = method;
  cfg.field = field;
  std::vector<double> ratio(trials, kNaN);
  parallel_for(trials, [&](std::size_t i) {
    Rng local = rng.substream(i);
    const SolveReport rep = solve(s, k, cfg, local);
    if (const EigRecord* r = rep.find_true(e.lambda)) ratio[i] = r->gamma / gamma_s;
  });

  McReport out;
  out.trials = trials;
  out.seed = rng.state();
  out.method = method;
  out.field = field;
  out.lambda = e.lambda;
  out.model = {static_cast<int>(k), field, DistributionKind::product};
  for (const double r : ratio) {
    if (std::isnan(r)) {
      ++out.match_failures;
    } else {
      out.samples.push_back(std::min(r, 1.0));
    }
  }
  if (out.match_failures * 100 > trials) {
    throw MatchFailure(std::to_string(out.match_failures) + " of " + std::to_string(trials) +
                       " trials did not recover the eigenvalue");
  }
  std::sort(out.samples.begin(), out.samples.end());
  out.histogram = make_histogram(out.samples);
  out.empirical_mean = std::accumulate(out.samples.begin(), out.samples.end(), 0.0) /
                       static_cast<double>(out.samples.size());
  out.ks_stat = ks_against(out.samples, static_cast<int>(k), field);
  out.ks_critical = ks_critical_1pct(out.samples.size());
  out.bound_table = bound_rows(out.samples, static_cast<int>(k), field, default_t_grid());
  return out;
}

BoundsTable bounds_figure(int k, FieldKind field, const std::vector<double>& t_grid,
                          std::size_t trials, const Rng& rng) {
  if (trials == 0) throw InsufficientTrials("bounds_figure needs at least one trial");
  std::vector<double> samples(trials);
  parallel_for(trials, [&](std::size_t i) {
    Rng local = rng.substream(i);
    samples[i] = sample_product(k, field, local);
  });
  std::sort(samples.begin(), samples.end());
  BoundsTable out;
  out.k = k;
  out.field = field;
  out.trials = trials;
  out.seed = rng.state();
  out.rows = bound_rows(samples, k, field, t_grid);
  return out;
}

RealOnComplexReport real_on_complex_experiment(std::size_t trials, const Rng& rng) {
  const auto [base, base_gt] = paper_pencil(PaperPencil::blockdiag10);
  RealOnComplexReport out;
  for (int i = 0; i < 2; ++i) {
    Rng drng = rng.substream(static_cast<std::uint64_t>(i));
    const auto [p, gt] = disguise(base, base_gt, DisguiseKind::uniform_entries, drng);
    out.complex_eig[i] = mc_ratio(p, gt, Scalar(1.0, 1.0), Method::project, FieldKind::real, trials,
                                  rng.substream(10 + 2 * static_cast<std::uint64_t>(i)));
    out.real_eig[i] = mc_ratio(p, gt, Scalar(2.0, 0.0), Method::project, FieldKind::real, trials,
                               rng.substream(11 + 2 * static_cast<std::uint64_t>(i)));
    const int k = static_cast<int>(gt.spec.k());
    out.ks_vs_real_model[i] = out.complex_eig[i].ks_stat;
    out.ks_vs_complex_model[i] = ks_against(out.complex_eig[i].samples, k, FieldKind::complex);
  }
  out.ks_two_sample = ks_two_sample(out.complex_eig[0].samples, out.complex_eig[1].samples);
  out.ks_two_sample_critical =
      ks_critical_1pct(out.complex_eig[0].samples.size(), out.complex_eig[1].samples.size());
  return out;
}

}  // namespace singpencil
