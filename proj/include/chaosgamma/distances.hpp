#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chaosgamma/chaos2.hpp"

namespace chaosgamma {

enum class DistanceMethod { quadrature, monte_carlo };

struct DistanceEstimate {
  double value = 0.0;
  std::optional<double> error_bound;  // quadrature
  std::optional<double> std_error;    // monte_carlo
  DistanceMethod method = DistanceMethod::quadrature;
};

/// Density of c1 (N_1^2 - 1) + c2 (N_2^2 - 1) for c1, c2 > 0:
/// 1/(2 sqrt(c1 c2)) e^(-(x+c1)/(2 c2) - 1/2)
///   * M(1/2, 1, (c1-c2)(c1+c2+x)/(2 c1 c2))  on x > -(c1+c2).
double density_two_eig(double c1, double c2, double x);

/// Exact total variation distance to G(2) by quadrature of
/// (1/2) int |density - psi|, split at the support edges.
DistanceEstimate dtv_two_eig(double c1, double c2);

/// Monte Carlo Kolmogorov distance between the spec's law and G(nu),
/// with the empirical CDF evaluated at both one-sided limits.
DistanceEstimate mc_kolmogorov(const EigenvalueSpec& spec, double nu,
                               std::size_t m, std::uint64_t seed);

/// kappa_2..kappa_P, exact for a spec/target or k-statistics for samples.
struct CumulantTable {
  std::vector<double> values;  // values[p-2] = kappa_p
  double kappa(int p) const { return values.at(static_cast<std::size_t>(p - 2)); }
  int p_max() const { return static_cast<int>(values.size()) + 1; }
};

/// Unbiased k-statistics k_2..k_{p_max} (p_max <= 4).
CumulantTable empirical_cumulants(const std::vector<double>& samples, int p_max);

}  // namespace chaosgamma
