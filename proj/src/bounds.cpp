#include "chaosgamma/bounds.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "chaosgamma/gamma_ops.hpp"
#include "chaosgamma/numerics.hpp"
#include "chaosgamma/target_gamma.hpp"

namespace chaosgamma {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_variance(const EigenvalueSpec& spec, double nu, const char* where) {
  if (!(nu > 0.0)) throw std::domain_error(std::string(where) + ": nu must be positive");
  const double var = variance(spec);
  if (std::abs(var - 2.0 * nu) > 1e-9 * std::max(1.0, 2.0 * nu)) {
    std::ostringstream os;
    os << where << ": variance " << var << " does not match 2*nu = " << 2.0 * nu;
    throw std::domain_error(os.str());
  }
}

double kappa_gap(const EigenvalueSpec& spec, int p, double nu) {
  return std::abs(cumulant_gap_to_target(spec, p, nu));
}

}  // namespace

BoundReport d1_bound(const EigenvalueSpec& spec, double nu) {
  require_variance(spec, nu, "d1_bound");
  const double d0 = delta(spec, 0).value;
  const double pre = std::max(1.0, 2.0 / nu);
  BoundReport r;
  r.name = "d1";
  r.value = pre * std::sqrt(d0);
  r.constants_used = {{"prefactor", pre}, {"delta0", d0}};
  return r;
}

BoundReport sqrt_cumulant_bound(const EigenvalueSpec& spec, double nu) {
  require_variance(spec, nu, "sqrt_cumulant_bound");
  const double k3 = cumulant(spec, 3);
  const double k4 = cumulant(spec, 4);
  const double inner = std::abs(k4 - 48.0 * nu - 12.0 * k3 + 96.0 * nu) / 6.0;
  const double pre = std::max(1.0, 2.0 / nu);
  BoundReport r;
  r.name = "sqrt_cumulant";
  r.value = inner;
  r.constants_used = {{"prefactor", 1.0 / 6.0},
                      {"composed_d1", pre * std::sqrt(inner)}};
  return r;
}

BoundReport d2_bracket(const EigenvalueSpec& spec, double nu) {
  require_variance(spec, nu, "d2_bracket");
  const double d0 = delta(spec, 0).value;
  const double d1 = delta(spec, 1).value;
  const double d2 = delta(spec, 2).value;
  BoundReport r;
  r.name = "d2_bracket";
  r.value = d0 + std::sqrt(d1 * d0) + std::sqrt(d2) + kappa_gap(spec, 3, nu) +
            kappa_gap(spec, 4, nu);
  r.constants_used = {{"delta0", d0}, {"delta1", d1}, {"delta2", d2}};
  r.symbolic_C = true;
  return r;
}

BoundReport d3_bracket(const EigenvalueSpec& spec, double nu) {
  require_variance(spec, nu, "d3_bracket");
  const double d2 = delta(spec, 2).value;
  BoundReport r;
  r.name = "d3_bracket";
  r.value = std::sqrt(d2) + kappa_gap(spec, 3, nu) + kappa_gap(spec, 4, nu);
  r.constants_used = {{"delta2", d2}};
  r.symbolic_C = true;
  return r;
}

double cb_constant(double b) {
  if (!(b > 1.0 / (2.0 * kPi))) {
    throw std::domain_error("cb_constant: requires b > 1/(2*pi)");
  }
  static std::map<double, double> cache;
  static std::mutex cache_mutex;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
  }

  const double rhs = kPi / 4.0 + 1.0 / (8.0 * b);
  auto sinc2 = [](double u) {
    if (u == 0.0) return 1.0;
    const double s = std::sin(u) / u;
    return s * s;
  };
  Tolerance quad_tol{1e-13, 1e-13, 1000000};
  auto residual = [&](double c) {
    return integrate(sinc2, 0.0, c / 4.0, quad_tol).value - rhs;
  };
  // LHS is increasing in c toward pi/2 > rhs, so a bracket always exists.
  double hi = 4.0;
  while (residual(hi) < 0.0) hi *= 2.0;
  Tolerance root_tol{1e-12, 1e-12, 200};
  const double c = find_root(residual, 1e-8, hi, root_tol);

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(b, c);
  return c;
}

double char_diff_bound(const EigenvalueSpec& spec, double nu, double t) {
  require_variance(spec, nu, "char_diff_bound");
  return 0.5 * std::abs(t) * std::sqrt(delta(spec, 0).value);
}

BoundReport kolmogorov_bound(const EigenvalueSpec& spec, double nu,
                             std::optional<double> b_opt) {
  require_variance(spec, nu, "kolmogorov_bound");
  const double b = b_opt.value_or(1.0);
  const double d0 = delta(spec, 0).value;
  const HolderData hold = holder(GammaTarget(nu));
  const double cb = cb_constant(b);

  BoundReport r;
  r.name = "kolmogorov";
  r.constants_used = {{"b", b}, {"c(b)", cb}, {"K", hold.constant_K},
                      {"exponent", nu >= 2.0 ? 0.25 : nu / (2.0 * (nu + 2.0))}};
  if (nu < 2.0) {
    // below nu = 2 the Hoelder constant is the envelope bound from holder()
    r.constants_used["holder_constant_derived"] = 1.0;
  }
  if (d0 == 0.0) {
    r.value = 0.0;
    r.constants_used["T_min"] = 0.0;
    return r;
  }

  const double c1 = b;
  if (nu >= 2.0) {
    const double c2 = b * hold.constant_K * cb * cb;
    const double t_min = std::sqrt(c2 / c1) * std::pow(d0, -0.25);
    r.value = 2.0 * std::sqrt(c1 * c2) * std::pow(d0, 0.25);
    r.constants_used["c1"] = c1;
    r.constants_used["c2"] = c2;
    r.constants_used["T_min"] = t_min;
    return r;
  }

  const double s = nu / 2.0;
  const double c3 =
      2.0 * b * hold.constant_K * std::pow(cb, 1.0 + s) / (1.0 + s);
  const double sq = std::sqrt(d0);
  const double t_min = std::pow(s * c3 / (c1 * sq), 1.0 / (s + 1.0));
  r.value = c1 * sq * t_min + c3 * std::pow(t_min, -s);
  r.constants_used["c1"] = c1;
  r.constants_used["c3"] = c3;
  r.constants_used["T_min"] = t_min;
  return r;
}

BoundReport kolmogorov_bound_best_b(const EigenvalueSpec& spec, double nu) {
  // c(b) blows up toward b = 1/(2 pi); the minimum always sits well inside
  const double lo = 0.18;
  double best_b = 1.0;
  double best = kolmogorov_bound(spec, nu, 1.0).value;
  for (int i = 0; i <= 400; ++i) {
    const double b = lo + (10.0 - lo) * i / 400.0;
    const double v = kolmogorov_bound(spec, nu, b).value;
    if (v < best) {
      best = v;
      best_b = b;
    }
  }
  BoundReport r = kolmogorov_bound(spec, nu, best_b);
  r.name = "kolmogorov_best_b";
  return r;
}

}  // namespace chaosgamma
