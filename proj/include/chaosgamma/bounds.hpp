#pragma once

#include <map>
#include <optional>
#include <string>

#include "chaosgamma/chaos2.hpp"

namespace chaosgamma {

struct BoundReport {
  std::string name;
  double value = 0.0;
  std::map<std::string, double> constants_used;
  // true when the unspecified constant C of the d2/d3 brackets was set to 1;
  // such values must never be compared against Monte Carlo distances
  bool symbolic_C = false;
};

/// max(1, 2/nu) sqrt(Delta_0). Requires variance(spec) = 2 nu.
BoundReport d1_bound(const EigenvalueSpec& spec, double nu);

/// (1/6)|kappa_4 - 48 nu - 12 kappa_3 + 96 nu|, plus the composed d1 bound
/// max(1, 2/nu) sqrt(value) in constants_used["composed_d1"].
BoundReport sqrt_cumulant_bound(const EigenvalueSpec& spec, double nu);

/// Delta_0 + sqrt(Delta_1 Delta_0) + sqrt(Delta_2)
/// + |kappa_3 - 8 nu| + |kappa_4 - 48 nu|, with C := 1 (symbolic_C).
BoundReport d2_bracket(const EigenvalueSpec& spec, double nu);

/// sqrt(Delta_2) + |kappa_3 - 8 nu| + |kappa_4 - 48 nu|, with C := 1.
BoundReport d3_bracket(const EigenvalueSpec& spec, double nu);

/// The smoothing constant c(b): unique root of
/// int_0^{c/4} sin(u)^2/u^2 du = pi/4 + 1/(8b); requires b > 1/(2 pi).
double cb_constant(double b);

/// (1/2)|t| sqrt(Delta_0) >= |charfn_F(t) - charfn(G(nu), t)|.
double char_diff_bound(const EigenvalueSpec& spec, double nu, double t);

/// Fully explicit Kolmogorov-distance bound. For nu >= 2 the closed-form
/// minimum 2 sqrt(c1 c2) Delta_0^(1/4); for nu < 2 the minimum of
/// c1 T sqrt(Delta_0) + c3 T^(-nu/2) with the Hoelder data of the target.
/// Default b = 1.
BoundReport kolmogorov_bound(const EigenvalueSpec& spec, double nu,
                             std::optional<double> b = std::nullopt);

/// Same bound minimized over b in (1/(2 pi), 10]. Not used by default.
BoundReport kolmogorov_bound_best_b(const EigenvalueSpec& spec, double nu);

}  // namespace chaosgamma
