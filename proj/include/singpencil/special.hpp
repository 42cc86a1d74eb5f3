#pragma once

#include <functional>

namespace singpencil {

/// log Gamma(x) for x > 0 (Lanczos, g = 7).  Relative error around 1e-15.
double log_gamma(double x);

double log_beta(double a, double b);
double beta_function(double a, double b);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b].  Stops when the error estimate
/// drops below max(abs_tol, rel_tol * |value|) or max_intervals is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-13, double rel_tol = 1e-12,
                           int max_intervals = 2000);

}  // namespace singpencil
