#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chaosgamma/chaos2.hpp"

namespace chaosgamma {

/// Delta_r(F) = Var(Gamma_{r+1}(F) - 2 Gamma_r(F))
///            = 2^(2r+3) sum_i c_i^(2r+2) (c_i - 1)^2.
struct DeltaValue {
  int r;
  double value;
};

DeltaValue delta(const EigenvalueSpec& spec, int r);

/// The same quantity through the cumulant combination
/// kappa_{2r+4}/(2r+3)! - 4 kappa_{2r+3}/(2r+2)! + 4 kappa_{2r+2}/(2r+1)!.
/// Serves as the independent oracle for delta(); never used the other way.
double delta_via_cumulants(const EigenvalueSpec& spec, int r);

/// E[(Gamma_bar_3 - 2 Gamma_bar_2)(Gamma_bar_2 - 2 Gamma_bar_1)]
/// = 64 sum_i c_i^5 (c_i - 1)^2. May be negative.
double cov_32_21(const EigenvalueSpec& spec);

/// Phi_F(beta) = Var((Gamma_3 - 2 Gamma_2) - 2 beta^2 (Gamma_2 - 2 Gamma_1)).
double phi(const EigenvalueSpec& spec, double beta);

struct PhiProfile {
  double var_x = 0.0;   // Var(Gamma_bar_3 - 2 Gamma_bar_2) = Delta_2
  double var_y = 0.0;   // Var(Gamma_bar_2 - 2 Gamma_bar_1) = Delta_1
  double cov_xy = 0.0;
  double beta_min = 0.0;
  double beta0 = 0.0;   // sqrt(2) * beta_min when defined
  bool degenerate = false;    // var_y = 0 (Gamma law); beta0 undefined
  bool negative_cov = false;  // beta_min clipped at 0
};

PhiProfile phi_profile(const EigenvalueSpec& spec);

struct Psi2Value {
  double value;
  double gram_det;  // var_x * var_y - cov^2
};

/// Psi_2(b1,b2) = Var(b1 (Gamma_3 - 2 Gamma_2) - 2 b2 (Gamma_2 - 2 Gamma_1)).
Psi2Value psi2(const EigenvalueSpec& spec, double beta1, double beta2);

/// Psi over an arbitrary set of orders:
/// Var(sum_r beta_r (Gamma_r - 2 Gamma_{r-1}))
/// = 2 sum_i (c_i - 1)^2 (sum_r beta_r 2^r c_i^r)^2.
double psi_general(const EigenvalueSpec& spec, const std::vector<int>& orders,
                   const std::vector<double>& betas);

/// M(F) = max(|kappa_3 - 8 nu|, |kappa_4 - 48 nu|).
double discrepancy_M(const EigenvalueSpec& spec, double nu);

/// kappa_p(F) - kappa_p(G(nu)), with the subtraction done before rounding.
double cumulant_gap_to_target(const EigenvalueSpec& spec, int p, double nu);

struct GammaCheck {
  bool is_gamma;
  std::string reason;
  std::vector<double> witness;  // offending eigenvalues when false
};

/// True iff Delta_1 <= tol * variance^2 (a single vanishing Delta_r settles
/// the law). Requires the variance to match 2*nu first.
GammaCheck is_centered_gamma(const EigenvalueSpec& spec, double nu, double tol);

enum class TraceSign { nonneg, nonpos, neither };

/// Sign of the operator A_f^4 - A_f^3 on the diagonal: nonneg iff no
/// coefficient lies in (0,1), nonpos iff all lie in [0,1].
TraceSign trace_sign(const EigenvalueSpec& spec);

struct TraceClassCheck {
  double lhs;  // Delta_2
  double rhs;  // 72 (kappa_4 - 6 kappa_3)^2
  bool holds;
};

TraceClassCheck trace_class_bound_check(const EigenvalueSpec& spec);

/// sum_i c_i (c_i^3 - c_i^2)^2 / sum_i (c_i^3 - c_i^2)^2;
/// nullopt when the denominator vanishes (the spec is Gamma).
std::optional<double> ratio_condition(const EigenvalueSpec& spec);

/// |kappa_{r+2}/(r+1)! - 2 kappa_{r+1}/r!| = |E[Gamma_{r+1}] - 2 E[Gamma_r]|.
double cumulant_gap(const EigenvalueSpec& spec, int r);

struct MixedGamma {
  double k;
  int l1;
  int l2;
};

/// Detects the mixed law {k/2 with multiplicity l1} u {1 with multiplicity l2}.
std::optional<MixedGamma> mixed_gamma_detect(const EigenvalueSpec& spec,
                                             double tol);

}  // namespace chaosgamma
