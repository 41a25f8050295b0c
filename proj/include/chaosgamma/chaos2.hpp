#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chaosgamma/target_gamma.hpp"

namespace chaosgamma {

/// A second-chaos element F = sum c_i (N_i^2 - 1), held in canonical order:
/// nonincreasing |c_i|, positive value first on ties, zeros dropped.
class EigenvalueSpec {
 public:
  static EigenvalueSpec canonical(std::vector<double> raw);

  const std::vector<double>& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

 private:
  explicit EigenvalueSpec(std::vector<double> c) : coeffs_(std::move(c)) {}
  std::vector<double> coeffs_;
};

EigenvalueSpec canonicalize(std::vector<double> raw);

/// kappa_p(F) = 2^(p-1) (p-1)! sum_i c_i^p, for p >= 2. The power sum is
/// accumulated in double-double, so the stored coefficients enter exactly.
double cumulant(const EigenvalueSpec& spec, int p);

/// kappa_1 vanishes by centering.
double kappa1(const EigenvalueSpec& spec);

double variance(const EigenvalueSpec& spec);

/// omega = max_{i <= nu_int} |1 - c_i| (missing entries count as zero),
/// vartheta = sum_{i > nu_int} c_i^2.
std::pair<double, double> omega_vartheta(const EigenvalueSpec& spec, int nu_int);

/// prod_i e^(-i c_i t) (1 - 2 i c_i t)^(-1/2), principal branch per factor.
ComplexValue charfn_F(const EigenvalueSpec& spec, double t);

struct ChaosSample {
  double f_value;
  std::vector<double> gamma_bars;  // centered Gamma operators, orders 1..R
};

/// Joint draws of (F, Gamma_bar_1(F), ..., Gamma_bar_R(F)) on shared
/// Gaussians, stored column-wise.
struct JointSamples {
  std::vector<double> f_values;
  std::vector<std::vector<double>> gamma_bars;  // [r-1][draw]

  std::size_t size() const { return f_values.size(); }
  ChaosSample at(std::size_t i) const;
};

JointSamples sample_joint(const EigenvalueSpec& spec, int R, std::size_t m,
                          std::uint64_t seed);

enum class Family { concrete, toy2, toy3, ustat, delta_example };

Family family_from_name(const std::string& name);
std::string family_name(Family family);

/// The example coefficient sequences; `delta` is only read by delta_example.
EigenvalueSpec family(Family fam, long n, double delta = 0.0);

struct RescaleResult {
  EigenvalueSpec spec;
  double scale;
};

/// Multiplies all coefficients by one factor so the variance becomes the
/// requested value; the variance hypothesis is never applied implicitly.
RescaleResult rescale_to_variance(const EigenvalueSpec& spec,
                                  double target_variance);

}  // namespace chaosgamma
