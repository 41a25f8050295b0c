#pragma once

#include <cstdint>
#include <vector>

namespace chaosgamma {

/// Complex value as an explicit (re, im) pair.
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
};

/// The centered Gamma law G(nu) = 2*StandardGamma(nu/2) - nu.
/// Mean 0, variance 2*nu; a centered chi-square when nu is an integer.
struct GammaTarget {
  double nu;
  explicit GammaTarget(double nu_);
};

/// Modulus-of-continuity data for the CDF: |G(a) - G(b)| <= K |a-b|^exponent.
struct HolderData {
  double exponent;
  double constant_K;
};

/// kappa_p: 0 for p = 1, else 2^(p-1) (p-1)! nu.
double cumulant(const GammaTarget& target, int p);

double pdf(const GammaTarget& target, double x);
double cdf(const GammaTarget& target, double x);

/// Characteristic function e^(-i nu t) (1 - 2it)^(-nu/2), principal branch.
ComplexValue charfn(const GammaTarget& target, double t);

/// m i.i.d. draws, reproducible for a given seed.
std::vector<double> sample(const GammaTarget& target, std::size_t m,
                           std::uint64_t seed);

HolderData holder(const GammaTarget& target);

}  // namespace chaosgamma
