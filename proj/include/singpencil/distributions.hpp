#pragma once

// Laws of |alpha|, |beta| and of the product |alpha||beta| for random
// projections, plus the tail bounds and Kolmogorov-Smirnov helpers used to
// compare Monte Carlo samples against them.

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "singpencil/matcore.hpp"
#include "singpencil/random.hpp"

namespace singpencil {

/// Density of |alpha|: 2kx(1-x^2)^(k-1) over C, 2/B(1/2,k/2) (1-x^2)^(k/2-1) over R.
double pdf_factor(double x, int k, FieldKind field);
double cdf_factor(double x, int k, FieldKind field);
/// E|alpha|.
double expected_factor(int k, FieldKind field);

/// True when a polynomial-times-log closed form of the product density is
/// available (complex k = 1..4, real k = 2, 4, 6).
bool has_product_closed_form(int k, FieldKind field);

/// Density of |alpha||beta|.  Uses the closed form when available and the
/// quadrature fallback otherwise.  At x = 0 the limit is returned, which is
/// +inf for the real field.
double pdf_product(double x, int k, FieldKind field);
/// The quadrature fallback f(t) = int_t^1 p(u) p(t/u) / u du, always.
double pdf_product_quadrature(double x, int k, FieldKind field);
double cdf_product(double x, int k, FieldKind field);
/// E(|alpha||beta|) through log-gamma.
double expected_product(int k, FieldKind field);

enum class DistributionKind { factor, product };

struct DistributionModel {
  int k = 1;
  FieldKind field = FieldKind::complex;
  DistributionKind kind = DistributionKind::product;

  double pdf(double x) const;
  double cdf(double x) const;
  double mean() const;
};

enum class TailBoundKind { simple_upper, refined_upper, lower };

std::string_view to_string(TailBoundKind kind);

/// Bounds on P(|alpha||beta| < t).  The real refined bound is the
/// non-asymptotic form (2k/pi) t (2 sqrt(pi) - 1 + t - ln t).  The lower bound
/// exists only for the real field with k >= 2.
double tail_bound(double t, int k, FieldKind field, TailBoundKind kind);

/// Whether tail_bound(t, k, field, kind) is defined.
bool tail_bound_applies(int k, FieldKind field, TailBoundKind kind);

/// sup |F_n - F| for sorted samples in [0, 1].  Rejects unsorted input.
double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf);

/// Two-sample statistic sup |F_n - G_m|; inputs need not be sorted.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic 1% critical values.
double ks_critical_1pct(std::size_t n);
double ks_critical_1pct(std::size_t n, std::size_t m);

/// |alpha| = sqrt(X) with X ~ Beta(phi/2, phi k/2).
double sample_factor(int k, FieldKind field, Rng& rng);
/// Product of two independent factor draws.
double sample_product(int k, FieldKind field, Rng& rng);

}  // namespace singpencil
