#include "chaosgamma/gamma_ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "compensated.hpp"

namespace chaosgamma {

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

// sum_i c_i^p (c_i - 1)^2 with a double-double accumulator
detail::dd weighted_gap_sum(const std::vector<double>& coeffs, int p) {
  detail::dd acc(0.0);
  for (double c : coeffs) {
    detail::dd term = detail::dd_pow(c, p);
    detail::dd gap = detail::dd_add(detail::dd(c), -1.0);
    term = detail::dd_mul(term, detail::dd_mul(gap, gap));
    acc = detail::dd_add(acc, term);
  }
  return acc;
}

detail::dd kappa_dd(const std::vector<double>& coeffs, int p) {
  detail::dd sum = detail::power_sum_dd(coeffs, p);
  double pre = 1.0;
  for (int k = 1; k < p; ++k) pre *= 2.0 * k;
  return detail::dd_mul(sum, pre);
}

}  // namespace

DeltaValue delta(const EigenvalueSpec& spec, int r) {
  if (r < 0) throw std::domain_error("delta: r must be >= 0");
  const double value =
      detail::dd_mul(weighted_gap_sum(spec.coeffs(), 2 * r + 2), pow2(2 * r + 3))
          .to_double();
  return {r, value};
}

double delta_via_cumulants(const EigenvalueSpec& spec, int r) {
  if (r < 0) throw std::domain_error("delta_via_cumulants: r must be >= 0");
  const auto& c = spec.coeffs();
  auto fact = [](int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  detail::dd t1 = detail::dd_div(kappa_dd(c, 2 * r + 4), fact(2 * r + 3));
  detail::dd t2 = detail::dd_div(kappa_dd(c, 2 * r + 3), fact(2 * r + 2));
  detail::dd t3 = detail::dd_div(kappa_dd(c, 2 * r + 2), fact(2 * r + 1));
  detail::dd out = detail::dd_sub(t1, detail::dd_mul(t2, 4.0));
  out = detail::dd_add(out, detail::dd_mul(t3, 4.0));
  return out.to_double();
}

double cov_32_21(const EigenvalueSpec& spec) {
  return detail::dd_mul(weighted_gap_sum(spec.coeffs(), 5), 64.0).to_double();
}

double phi(const EigenvalueSpec& spec, double beta) {
  const double b2 = beta * beta;
  detail::dd acc(0.0);
  for (double c : spec.coeffs()) {
    const double c2 = c * c;
    const double term = 8.0 * (c2 * c2 - c2 * c) - 8.0 * b2 * (c2 * c - c2);
    acc = detail::dd_add(acc, detail::two_prod(term, term));
  }
  return detail::dd_mul(acc, 2.0).to_double();
}

PhiProfile phi_profile(const EigenvalueSpec& spec) {
  PhiProfile p;
  p.var_x = delta(spec, 2).value;
  p.var_y = delta(spec, 1).value;
  p.cov_xy = cov_32_21(spec);
  if (p.var_y <= 0.0) {
    p.degenerate = true;
    return p;
  }
  if (p.cov_xy < 0.0) {
    p.negative_cov = true;  // real minimizer does not exist; clip at 0
    return p;
  }
  p.beta_min = std::sqrt(p.cov_xy / (2.0 * p.var_y));
  p.beta0 = std::sqrt(2.0) * p.beta_min;
  return p;
}

Psi2Value psi2(const EigenvalueSpec& spec, double beta1, double beta2) {
  const double var_x = delta(spec, 2).value;
  const double var_y = delta(spec, 1).value;
  const double cov = cov_32_21(spec);
  Psi2Value out;
  out.value = beta1 * beta1 * var_x - 4.0 * beta1 * beta2 * cov +
              4.0 * beta2 * beta2 * var_y;
  out.value = std::max(0.0, out.value);
  out.gram_det = var_x * var_y - cov * cov;
  return out;
}

double psi_general(const EigenvalueSpec& spec, const std::vector<int>& orders,
                   const std::vector<double>& betas) {
  if (orders.empty() || orders.size() != betas.size()) {
    throw std::domain_error("psi_general: orders and betas must match, nonempty");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1) throw std::domain_error("psi_general: orders must be >= 1");
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      if (orders[i] == orders[j]) {
        throw std::domain_error("psi_general: orders must be distinct");
      }
    }
  }
  detail::dd acc(0.0);
  for (double c : spec.coeffs()) {
    double inner = 0.0;
    for (std::size_t k = 0; k < orders.size(); ++k) {
      inner += betas[k] * pow2(orders[k]) * std::pow(c, orders[k]);
    }
    const double gap = c - 1.0;
    const double term = gap * inner;
    acc = detail::dd_add(acc, detail::two_prod(term, term));
  }
  return detail::dd_mul(acc, 2.0).to_double();
}

double cumulant_gap_to_target(const EigenvalueSpec& spec, int p, double nu) {
  if (p < 2) throw std::domain_error("cumulant_gap_to_target: p must be >= 2");
  double pre = 1.0;
  for (int k = 1; k < p; ++k) pre *= 2.0 * k;
  detail::dd gap = detail::dd_add(kappa_dd(spec.coeffs(), p), -pre * nu);
  return gap.to_double();
}

double discrepancy_M(const EigenvalueSpec& spec, double nu) {
  return std::max(std::abs(cumulant_gap_to_target(spec, 3, nu)),
                  std::abs(cumulant_gap_to_target(spec, 4, nu)));
}

GammaCheck is_centered_gamma(const EigenvalueSpec& spec, double nu, double tol) {
  GammaCheck out{false, "", {}};
  const double var = variance(spec);
  if (std::abs(var - 2.0 * nu) > tol * std::max(1.0, 2.0 * nu)) {
    std::ostringstream os;
    os << "variance " << var << " does not match 2*nu = " << 2.0 * nu;
    out.reason = os.str();
    return out;
  }
  const double scale = var * var;
  const double d1 = delta(spec, 1).value;
  if (d1 <= tol * scale) {
    out.is_gamma = true;
    out.reason = "Delta_1 vanishes";
    return out;
  }
  std::ostringstream os;
  os << "Delta_1 = " << d1 << " exceeds tol*variance^2 = " << tol * scale;
  out.reason = os.str();
  const double per_term_tol = tol * scale / static_cast<double>(spec.size());
  for (double c : spec.coeffs()) {
    const double contrib = 32.0 * std::pow(c, 4) * (c - 1.0) * (c - 1.0);
    if (contrib > per_term_tol) out.witness.push_back(c);
  }
  return out;
}

TraceSign trace_sign(const EigenvalueSpec& spec) {
  bool nonneg = true, nonpos = true;
  for (double c : spec.coeffs()) {
    if (c > 0.0 && c < 1.0) nonneg = false;  // c^3 (c-1) < 0
    if (c < 0.0 || c > 1.0) nonpos = false;
  }
  if (nonneg) return TraceSign::nonneg;  // ties resolved toward nonneg
  if (nonpos) return TraceSign::nonpos;
  return TraceSign::neither;
}

TraceClassCheck trace_class_bound_check(const EigenvalueSpec& spec) {
  TraceClassCheck out;
  out.lhs = delta(spec, 2).value;
  const double k4 = cumulant(spec, 4);
  const double k3 = cumulant(spec, 3);
  const double diff = k4 - 6.0 * k3;
  out.rhs = 72.0 * diff * diff;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-300;
  return out;
}

std::optional<double> ratio_condition(const EigenvalueSpec& spec) {
  detail::dd num(0.0), den(0.0);
  for (double c : spec.coeffs()) {
    const double g = c * c * c - c * c;
    den = detail::dd_add(den, detail::two_prod(g, g));
    num = detail::dd_add(num, detail::dd_mul(detail::two_prod(g, g), c));
  }
  const double d = den.to_double();
  if (d <= 0.0) return std::nullopt;
  return num.to_double() / d;
}

double cumulant_gap(const EigenvalueSpec& spec, int r) {
  if (r < 1) throw std::domain_error("cumulant_gap: r must be >= 1");
  auto fact = [](int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  detail::dd t1 = detail::dd_div(kappa_dd(spec.coeffs(), r + 2), fact(r + 1));
  detail::dd t2 = detail::dd_div(kappa_dd(spec.coeffs(), r + 1), fact(r));
  return std::abs(detail::dd_sub(t1, detail::dd_mul(t2, 2.0)).to_double());
}

std::optional<MixedGamma> mixed_gamma_detect(const EigenvalueSpec& spec,
                                             double tol) {
  std::vector<double> others;
  int l2 = 0;
  for (double c : spec.coeffs()) {
    if (std::abs(c - 1.0) <= tol) {
      ++l2;
    } else {
      others.push_back(c);
    }
  }
  MixedGamma out{2.0, 0, l2};  // all-ones: k/2 = 1 by convention
  if (!others.empty()) {
    const auto [lo, hi] = std::minmax_element(others.begin(), others.end());
    if (*hi - *lo > 2.0 * tol) return std::nullopt;
    double mean = 0.0;
    for (double c : others) mean += c;
    mean /= static_cast<double>(others.size());
    out.k = 2.0 * mean;
    out.l1 = static_cast<int>(others.size());
  }
  const double var_half = variance(spec) / 2.0;
  const double recon = out.l1 * out.k * out.k / 4.0 + out.l2;
  if (std::abs(recon - var_half) > tol * std::max(1.0, var_half)) {
    return std::nullopt;
  }
  return out;
}

}  // namespace chaosgamma
