#include "singpencil/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "singpencil/errors.hpp"
#include "singpencil/special.hpp"

namespace singpencil {

namespace {

constexpr double kQuadAbsTol = 1e-14;
constexpr double kQuadRelTol = 1e-12;

void check_k(int k) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument(std::string(what) + " requires x in [0, 1]");
  }
}

// Integral over [t, 1] with u = t + (1 - t)(1 - cos(pi w))/2, which flattens
// algebraic singularities at both endpoints.
double integrate_cosine_map(const std::function<double(double)>& g, double t) {
  const double len = 1.0 - t;
  if (len <= 0.0) return 0.0;
  auto mapped = [&](double w) {
    const double u = t + 0.5 * len * (1.0 - std::cos(M_PI * w));
    const double du = 0.5 * len * M_PI * std::sin(M_PI * w);
    if (du == 0.0 || u <= t || u >= 1.0) return 0.0;
    const double v = g(u) * du;
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(mapped, 0.0, 1.0, kQuadAbsTol, kQuadRelTol).value;
}

double closed_form_complex(double x, int k) {
  const double l = std::log(x);
  const double x2 = x * x;
  const double x4 = x2 * x2;
  switch (k) {
    case 1: return -4.0 * x * l;
    case 2: return 16.0 * x * (-1.0 + x2 - (1.0 + x2) * l);
    case 3: return 18.0 * x * (-3.0 + 3.0 * x4 - 2.0 * (1.0 + 4.0 * x2 + x4) * l);
    case 4: {
      const double x6 = x4 * x2;
      return 32.0 / 3.0 * x *
             (-11.0 - 27.0 * x2 + 27.0 * x4 + 11.0 * x6 -
              6.0 * (1.0 + 9.0 * x2 + 9.0 * x4 + x6) * l);
    }
    default: break;
  }
  throw InvalidArgument("no complex closed form for this k");
}

double closed_form_real(double x, int k) {
  const double l = std::log(x);
  const double x2 = x * x;
  const double x4 = x2 * x2;
  switch (k) {
    case 2: return -l;
    case 4: return 9.0 / 4.0 * (-1.0 + x2 - (1.0 + x2) * l);
    case 6: return 225.0 / 128.0 * (-3.0 + 3.0 * x4 - 2.0 * (1.0 + 4.0 * x2 + x4) * l);
    default: break;
  }
  throw InvalidArgument("no real closed form for this k");
}

}  // namespace

double pdf_factor(double x, int k, FieldKind field) {
  check_k(k);
  check_unit(x, "pdf_factor");
  const double s = 1.0 - x * x;
  if (field == FieldKind::complex) {
    return 2.0 * k * x * std::pow(s, k - 1);
  }
  if (s == 0.0 && k == 1) return std::numeric_limits<double>::infinity();
  return 2.0 / beta_function(0.5, 0.5 * k) * std::pow(s, 0.5 * k - 1.0);
}

double cdf_factor(double x, int k, FieldKind field) {
  check_k(k);
  check_unit(x, "cdf_factor");
  if (field == FieldKind::complex) return -std::expm1(k * std::log1p(-x * x));
  return incomplete_beta(0.5, 0.5 * k, x * x);
}

double expected_factor(int k, FieldKind field) {
  check_k(k);
  if (field == FieldKind::complex) return k * beta_function(1.5, k);
  return 2.0 / (k * beta_function(0.5, 0.5 * k));
}

bool has_product_closed_form(int k, FieldKind field) {
  if (field == FieldKind::complex) return k >= 1 && k <= 4;
  return k == 2 || k == 4 || k == 6;
}

double pdf_product_quadrature(double x, int k, FieldKind field) {
  check_k(k);
  check_unit(x, "pdf_product");
  if (x == 0.0) {
    return field == FieldKind::complex ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (x == 1.0) return 0.0;
  auto integrand = [&](double u) {
    return pdf_factor(u, k, field) * pdf_factor(std::min(1.0, x / u), k, field) / u;
  };
  return integrate_cosine_map(integrand, x);
}

double pdf_product(double x, int k, FieldKind field) {
  check_k(k);
  check_unit(x, "pdf_product");
  if (!has_product_closed_form(k, field)) return pdf_product_quadrature(x, k, field);
  if (x == 0.0) {
    return field == FieldKind::complex ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return field == FieldKind::complex ? closed_form_complex(x, k) : closed_form_real(x, k);
}

double cdf_product(double x, int k, FieldKind field) {
  check_k(k);
  check_unit(x, "cdf_product");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  // P(XY < t) = F(t) + int_t^1 f(u) F(t/u) du.
  auto integrand = [&](double u) {
    return pdf_factor(u, k, field) * cdf_factor(std::min(1.0, x / u), k, field);
  };
  const double p = cdf_factor(x, k, field) + integrate_cosine_map(integrand, x);
  return std::clamp(p, 0.0, 1.0);
}

double expected_product(int k, FieldKind field) {
  check_k(k);
  if (field == FieldKind::complex) {
    return M_PI / 4.0 * std::exp(2.0 * (log_gamma(k + 1.0) - log_gamma(k + 1.5)));
  }
  return std::exp(2.0 * (log_gamma(0.5 * (k + 1)) - log_gamma(0.5 * (k + 2)))) / M_PI;
}

double DistributionModel::pdf(double x) const {
  return kind == DistributionKind::factor ? pdf_factor(x, k, field) : pdf_product(x, k, field);
}

double DistributionModel::cdf(double x) const {
  return kind == DistributionKind::factor ? cdf_factor(x, k, field) : cdf_product(x, k, field);
}

double DistributionModel::mean() const {
  return kind == DistributionKind::factor ? expected_factor(k, field) : expected_product(k, field);
}

std::string_view to_string(TailBoundKind kind) {
  switch (kind) {
    case TailBoundKind::simple_upper: return "simple_upper";
    case TailBoundKind::refined_upper: return "refined_upper";
    case TailBoundKind::lower: return "lower";
  }
  return "?";
}

bool tail_bound_applies(int k, FieldKind field, TailBoundKind kind) {
  if (kind != TailBoundKind::lower) return k >= 1;
  return field == FieldKind::real && k >= 2;
}

double tail_bound(double t, int k, FieldKind field, TailBoundKind kind) {
  check_k(k);
  if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("tail_bound requires t in (0, 1]");
  if (!tail_bound_applies(k, field, kind)) {
    throw InvalidArgument("lower tail bound requires the real field and k >= 2");
  }
  const bool cplx = field == FieldKind::complex;
  switch (kind) {
    case TailBoundKind::simple_upper:
      return cplx ? 2.0 * k * t : std::sqrt(8.0 * k * t / M_PI);
    case TailBoundKind::refined_upper:
      if (cplx) return double(k) * k * t * t * (1.0 - 2.0 * std::log(t));
      return 2.0 * k / M_PI * t * (2.0 * std::sqrt(M_PI) - 1.0 + t - std::log(t));
    case TailBoundKind::lower:
      return std::sqrt(8.0 * (k - 1) / M_PI) * t;
  }
  return 0.0;
}

double ks_statistic(std::span<const double> sorted_samples,
                    const std::function<double(double)>& cdf) {
  const std::size_t n = sorted_samples.size();
  if (n < 2) throw InvalidArgument("ks_statistic needs at least two samples");
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end())) {
    throw InvalidArgument("ks_statistic requires sorted samples");
  }
  if (sorted_samples.front() < 0.0 || sorted_samples.back() > 1.0) {
    throw InvalidArgument("ks_statistic requires samples in [0, 1]");
  }
  const double dn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max({d, (i + 1) / dn - f, f - i / dn});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_two_sample needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return 1.63 * std::sqrt((dn + dm) / (dn * dm));
}

double sample_factor(int k, FieldKind field, Rng& rng) {
  check_k(k);
  const double p = phi(field);
  return std::sqrt(rng.beta(0.5 * p, 0.5 * p * k));
}

double sample_product(int k, FieldKind field, Rng& rng) {
  const double a = sample_factor(k, field, rng);
  return a * sample_factor(k, field, rng);
}

}  // namespace singpencil
