#include "chaosgamma/chaos2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "compensated.hpp"
#include "rng.hpp"

namespace chaosgamma {

EigenvalueSpec EigenvalueSpec::canonical(std::vector<double> raw) {
  std::vector<double> kept;
  kept.reserve(raw.size());
  for (double c : raw) {
    if (!std::isfinite(c)) {
      throw std::domain_error("EigenvalueSpec: coefficients must be finite");
    }
    if (c != 0.0) kept.push_back(c);
  }
  if (kept.empty()) {
    throw std::domain_error("EigenvalueSpec: at least one nonzero coefficient");
  }
  std::sort(kept.begin(), kept.end(), [](double a, double b) {
    const double aa = std::abs(a), ab = std::abs(b);
    if (aa != ab) return aa > ab;
    return a > b;  // positive value first on ties
  });
  return EigenvalueSpec(std::move(kept));
}

EigenvalueSpec canonicalize(std::vector<double> raw) {
  return EigenvalueSpec::canonical(std::move(raw));
}

double cumulant(const EigenvalueSpec& spec, int p) {
  if (p < 2) throw std::domain_error("cumulant: p must be >= 2 (kappa_1 = 0)");
  detail::dd sum = detail::power_sum_dd(spec.coeffs(), p);
  double pre = 1.0;
  for (int k = 1; k < p; ++k) pre *= 2.0 * k;
  return detail::dd_mul(sum, pre).to_double();
}

double kappa1(const EigenvalueSpec&) { return 0.0; }

double variance(const EigenvalueSpec& spec) {
  return detail::dd_mul(detail::power_sum_dd(spec.coeffs(), 2), 2.0).to_double();
}

std::pair<double, double> omega_vartheta(const EigenvalueSpec& spec, int nu_int) {
  if (nu_int < 1) throw std::domain_error("omega_vartheta: nu_int must be >= 1");
  const auto& c = spec.coeffs();
  double omega = 0.0;
  for (int i = 0; i < nu_int; ++i) {
    const double ci = (static_cast<std::size_t>(i) < c.size()) ? c[i] : 0.0;
    omega = std::max(omega, std::abs(1.0 - ci));
  }
  detail::dd tail(0.0);
  for (std::size_t i = static_cast<std::size_t>(nu_int); i < c.size(); ++i) {
    tail = detail::dd_add(tail, detail::two_prod(c[i], c[i]));
  }
  return {omega, tail.to_double()};
}

ComplexValue charfn_F(const EigenvalueSpec& spec, double t) {
  double logmod = 0.0;
  double arg = 0.0;
  for (double c : spec.coeffs()) {
    const double ct = c * t;
    logmod += -0.25 * std::log1p(4.0 * ct * ct);
    arg += -ct + 0.5 * std::atan(2.0 * ct);
  }
  const double mod = std::exp(logmod);
  return {mod * std::cos(arg), mod * std::sin(arg)};
}

ChaosSample JointSamples::at(std::size_t i) const {
  ChaosSample s;
  s.f_value = f_values[i];
  s.gamma_bars.reserve(gamma_bars.size());
  for (const auto& col : gamma_bars) s.gamma_bars.push_back(col[i]);
  return s;
}

JointSamples sample_joint(const EigenvalueSpec& spec, int R, std::size_t m,
                          std::uint64_t seed) {
  if (R < 0) throw std::domain_error("sample_joint: R must be >= 0");
  if (m < 1) throw std::domain_error("sample_joint: m must be >= 1");
  const auto& c = spec.coeffs();
  const std::size_t len = c.size();

  // weights[r-1][i] = 2^r c_i^(r+1), the eigenvalues of Gamma_bar_r
  std::vector<std::vector<double>> weights(R, std::vector<double>(len));
  for (int r = 1; r <= R; ++r) {
    for (std::size_t i = 0; i < len; ++i) {
      weights[r - 1][i] = std::pow(2.0, r) * std::pow(c[i], r + 1);
    }
  }

  JointSamples out;
  out.f_values.resize(m);
  out.gamma_bars.assign(R, std::vector<double>(m));

  const std::size_t blocks = (m + detail::kSampleBlock - 1) / detail::kSampleBlock;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    detail::Rng rng = detail::block_rng(seed, blk);
    const std::size_t lo = blk * detail::kSampleBlock;
    const std::size_t hi = std::min(m, lo + detail::kSampleBlock);
    std::vector<double> y(len);
    for (std::size_t draw = lo; draw < hi; ++draw) {
      double f = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        const double z = rng.normal();
        y[i] = z * z - 1.0;
        f += c[i] * y[i];
      }
      out.f_values[draw] = f;
      for (int r = 0; r < R; ++r) {
        double g = 0.0;
        const auto& w = weights[r];
        for (std::size_t i = 0; i < len; ++i) g += w[i] * y[i];
        out.gamma_bars[r][draw] = g;
      }
    }
  }
  return out;
}

Family family_from_name(const std::string& name) {
  if (name == "concrete") return Family::concrete;
  if (name == "toy2") return Family::toy2;
  if (name == "toy3") return Family::toy3;
  if (name == "ustat") return Family::ustat;
  if (name == "delta") return Family::delta_example;
  throw std::domain_error("unknown family: " + name);
}

std::string family_name(Family family) {
  switch (family) {
    case Family::concrete: return "concrete";
    case Family::toy2: return "toy2";
    case Family::toy3: return "toy3";
    case Family::ustat: return "ustat";
    case Family::delta_example: return "delta";
  }
  throw std::domain_error("unknown family enum");
}

EigenvalueSpec family(Family fam, long n, double delta) {
  if (n < 2) throw std::domain_error("family: n must be >= 2");
  const double nd = static_cast<double>(n);
  switch (fam) {
    case Family::concrete:
      return canonicalize({std::sqrt(1.0 + 1.0 / nd), std::sqrt(1.0 - 1.0 / nd)});
    case Family::toy2: {
      const double alpha = 1.0 / nd;
      const double beta = std::sqrt(1.0 - (1.0 - alpha) * (1.0 - alpha));
      return canonicalize({1.0 - alpha, -beta});
    }
    case Family::toy3: {
      const double alpha = 1.0 / nd;
      const double beta = std::sqrt(1.0 - (1.0 - alpha) * (1.0 - alpha));
      return canonicalize({1.0 - alpha, beta});
    }
    case Family::ustat: {
      std::vector<double> c(static_cast<std::size_t>(n));
      c[0] = std::sqrt((nd - 1.0) / nd);
      const double tail = -1.0 / std::sqrt(nd * (nd - 1.0));
      for (long i = 1; i < n; ++i) c[static_cast<std::size_t>(i)] = tail;
      return canonicalize(std::move(c));
    }
    case Family::delta_example: {
      if (!(delta >= 0.0 && delta <= 1.0)) {
        throw std::domain_error("family: delta must lie in [0,1]");
      }
      const double np = std::pow(nd, 1.0 + delta);
      return canonicalize({std::sqrt(1.0 + 1.0 / nd), std::sqrt(1.0 - 1.0 / nd),
                           std::sqrt(1.0 - 1.0 / np), std::sqrt(0.5 / np),
                           std::sqrt(0.5 / np)});
    }
  }
  throw std::domain_error("unknown family enum");
}

RescaleResult rescale_to_variance(const EigenvalueSpec& spec,
                                  double target_variance) {
  if (!(target_variance > 0.0)) {
    throw std::domain_error("rescale_to_variance: target must be positive");
  }
  const double scale = std::sqrt(target_variance / variance(spec));
  std::vector<double> c = spec.coeffs();
  for (double& x : c) x *= scale;
  return {canonicalize(std::move(c)), scale};
}

}  // namespace chaosgamma
