#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace chaosgamma {

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  long max_iter = 1000000;
};

/// Least-squares fit of log y against log n.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  // natural log scale
  double r_squared = 0.0;
};

struct IntegralResult {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Confluent hypergeometric function M(a,b,z) = sum_k (a)_k/(b)_k z^k/k!.
/// For z < 0 the series is evaluated through M(a,b,z) = e^z M(b-a,b,-z),
/// keeping all terms positive for the usual parameter ranges.
double kummer_m(double a, double b, double z, const Tolerance& tol = {});

/// Regularized lower incomplete gamma function P(s,x) = gamma(s,x)/Gamma(s).
double reg_lower_gamma(double s, double x);

/// Globally adaptive Gauss-Kronrod (G7,K15) quadrature. The upper limit may
/// be +infinity, handled by the substitution x = a + t/(1-t).
IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, const Tolerance& tol = {});

/// Bracketing root solve (Brent). Requires a sign change on [lo, hi];
/// lo and hi may be given in either order.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {});

LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points);

}  // namespace chaosgamma
