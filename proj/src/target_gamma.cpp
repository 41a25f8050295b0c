#include "chaosgamma/target_gamma.hpp"

#include <cmath>
#include <stdexcept>

#include "chaosgamma/numerics.hpp"
#include "rng.hpp"

namespace chaosgamma {

GammaTarget::GammaTarget(double nu_) : nu(nu_) {
  if (!(nu > 0.0)) throw std::domain_error("GammaTarget: nu must be positive");
}

double cumulant(const GammaTarget& target, int p) {
  if (p < 1) throw std::domain_error("cumulant: p must be >= 1");
  if (p == 1) return 0.0;
  double value = target.nu;
  for (int k = 1; k < p; ++k) value *= 2.0 * k;  // 2^(p-1) (p-1)!
  return value;
}

double pdf(const GammaTarget& target, double x) {
  const double nu = target.nu;
  if (x <= -nu) return 0.0;
  const double lg = -(nu / 2.0) * std::log(2.0) - std::lgamma(nu / 2.0) +
                    (nu / 2.0 - 1.0) * std::log(x + nu) - x / 2.0 - nu / 2.0;
  return std::exp(lg);
}

double cdf(const GammaTarget& target, double x) {
  const double nu = target.nu;
  if (x <= -nu) return 0.0;
  return reg_lower_gamma(nu / 2.0, (x + nu) / 2.0);
}

ComplexValue charfn(const GammaTarget& target, double t) {
  const double nu = target.nu;
  // (1-2it)^(-nu/2): modulus (1+4t^2)^(-nu/4), argument (nu/2) atan(2t)
  const double logmod = -(nu / 4.0) * std::log1p(4.0 * t * t);
  const double arg = -nu * t + (nu / 2.0) * std::atan(2.0 * t);
  const double mod = std::exp(logmod);
  return {mod * std::cos(arg), mod * std::sin(arg)};
}

std::vector<double> sample(const GammaTarget& target, std::size_t m,
                           std::uint64_t seed) {
  if (m < 1) throw std::domain_error("sample: m must be >= 1");
  const double shape = target.nu / 2.0;
  std::vector<double> out(m);
  const std::size_t blocks = (m + detail::kSampleBlock - 1) / detail::kSampleBlock;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    detail::Rng rng = detail::block_rng(seed, blk);
    const std::size_t lo = blk * detail::kSampleBlock;
    const std::size_t hi = std::min(m, lo + detail::kSampleBlock);
    for (std::size_t i = lo; i < hi; ++i) {
      out[i] = 2.0 * rng.standard_gamma(shape) - target.nu;
    }
  }
  return out;
}

HolderData holder(const GammaTarget& target) {
  const double nu = target.nu;
  if (nu > 2.0) {
    // density peaks at x = -2
    return {1.0, pdf(target, -2.0)};
  }
  if (nu == 2.0) return {1.0, 0.5};
  // nu < 2: integrate the envelope (x+nu)^(nu/2-1) of the density
  const double k = std::pow(2.0, 1.0 - nu / 2.0) / (nu * std::tgamma(nu / 2.0));
  return {nu / 2.0, k};
}

}  // namespace chaosgamma
