#include "chaosgamma/distances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chaosgamma/numerics.hpp"
#include "chaosgamma/target_gamma.hpp"

namespace chaosgamma {

namespace {

double kahan_sum(const std::vector<double>& xs) {
  double s = 0.0, comp = 0.0;
  for (double x : xs) {
    double y = x - comp;
    double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

// G(2) density
double psi2_density(double x) {
  if (x <= -2.0) return 0.0;
  return 0.5 * std::exp(-x / 2.0 - 1.0);
}

}  // namespace

double density_two_eig(double c1, double c2, double x) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw std::domain_error("density_two_eig: both eigenvalues must be positive");
  }
  const double edge = c1 + c2;
  if (x <= -edge) return 0.0;
  const double z = (c1 - c2) * (edge + x) / (2.0 * c1 * c2);
  const double pre =
      std::exp(-(x + c1) / (2.0 * c2) - 0.5) / (2.0 * std::sqrt(c1 * c2));
  return pre * kummer_m(0.5, 1.0, z);
}

DistanceEstimate dtv_two_eig(double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw std::domain_error("dtv_two_eig: both eigenvalues must be positive");
  }
  const double edge = c1 + c2;
  const double a = std::max(c1, c2);

  auto diff = [&](double x) {
    return std::abs(density_two_eig(c1, c2, x) - psi2_density(x));
  };

  // truncation point: both tails below ~1e-18
  const double T = 85.0 * std::max(1.0, a);
  const double tail_psi = std::exp(-T / 2.0 - 1.0);
  const double tail_phi =
      (a / std::sqrt(c1 * c2)) * std::exp(-(T + edge) / (2.0 * a));

  Tolerance tol{2e-10, 1e-10, 4000000};
  double half_l1 = 0.0;
  double err = tail_psi + tail_phi;

  // split at both support edges, where the integrand has kinks
  const double lo = -std::max(edge, 2.0);
  const double mid_edge = -std::min(edge, 2.0);
  std::vector<double> cuts{lo, mid_edge};
  for (double c : {-1.0, 0.0, 2.0, 10.0}) {
    if (c > cuts.back()) cuts.push_back(c);
  }
  cuts.push_back(T);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] == cuts[i + 1]) continue;
    IntegralResult piece = integrate(diff, cuts[i], cuts[i + 1], tol);
    half_l1 += piece.value;
    err += piece.error_bound;
  }

  DistanceEstimate out;
  out.value = 0.5 * half_l1;
  out.error_bound = 0.5 * err;
  out.method = DistanceMethod::quadrature;
  return out;
}

DistanceEstimate mc_kolmogorov(const EigenvalueSpec& spec, double nu,
                               std::size_t m, std::uint64_t seed) {
  if (m < 1000) throw std::domain_error("mc_kolmogorov: m must be >= 1000");
  const GammaTarget target(nu);
  std::vector<double> xs = sample_joint(spec, 0, m, seed).f_values;
  std::sort(xs.begin(), xs.end());
  const double md = static_cast<double>(m);
  double dist = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double g = cdf(target, xs[i]);
    const double hi = std::abs(static_cast<double>(i + 1) / md - g);
    const double lo = std::abs(static_cast<double>(i) / md - g);
    dist = std::max(dist, std::max(hi, lo));
  }
  DistanceEstimate out;
  out.value = dist;
  out.std_error = 0.5 / std::sqrt(md);
  out.method = DistanceMethod::monte_carlo;
  return out;
}

CumulantTable empirical_cumulants(const std::vector<double>& samples, int p_max) {
  if (p_max < 2 || p_max > 4) {
    throw std::domain_error("empirical_cumulants: p_max must be in [2,4]");
  }
  const std::size_t n = samples.size();
  if (n <= static_cast<std::size_t>(p_max)) {
    throw std::domain_error("empirical_cumulants: sample too small");
  }
  const double nd = static_cast<double>(n);
  const double mean = kahan_sum(samples) / nd;

  double m2 = 0, m3 = 0, m4 = 0;
  double c2 = 0, c3 = 0, c4 = 0;  // Kahan carries
  for (double x : samples) {
    const double d = x - mean;
    const double d2 = d * d;
    auto add = [](double& s, double& comp, double v) {
      double y = v - comp;
      double t = s + y;
      comp = (t - s) - y;
      s = t;
    };
    add(m2, c2, d2);
    add(m3, c3, d2 * d);
    add(m4, c4, d2 * d2);
  }
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;

  CumulantTable table;
  table.values.push_back(nd / (nd - 1.0) * m2);
  if (p_max >= 3) {
    table.values.push_back(nd * nd * m3 / ((nd - 1.0) * (nd - 2.0)));
  }
  if (p_max >= 4) {
    table.values.push_back(nd * nd *
                           ((nd + 1.0) * m4 - 3.0 * (nd - 1.0) * m2 * m2) /
                           ((nd - 1.0) * (nd - 2.0) * (nd - 3.0)));
  }
  return table;
}

}  // namespace chaosgamma
