#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "chaosgamma/chaos2.hpp"
#include "chaosgamma/gamma_ops.hpp"
#include "chaosgamma/numerics.hpp"

using namespace chaosgamma;

namespace {

std::vector<double> fuzz_coeffs(std::mt19937_64& gen) {
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::vector<double> c(len(gen));
  for (double& x : c) {
    do {
      x = val(gen);
    } while (x == 0.0);
  }
  return c;
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

TEST_CASE("delta eigenvalue formula") {
  auto ones = canonicalize({1.0, 1.0, 1.0});
  for (int r = 0; r <= 4; ++r) CHECK(delta(ones, r).value == 0.0);

  CHECK(delta(canonicalize({2.0}), 1).value == doctest::Approx(512.0));

  // concrete(10): 8 (1.1 (sqrt(1.1)-1)^2 + 0.9 (sqrt(0.9)-1)^2)
  auto conc = family(Family::concrete, 10);
  CHECK(delta(conc, 0).value ==
        doctest::Approx(0.039924780277934059).epsilon(1e-13));

  CHECK_THROWS_AS(delta(ones, -1), std::domain_error);
}

TEST_CASE("delta matches the cumulant combination") {
  auto c2 = canonicalize({2.0});
  CHECK(delta_via_cumulants(c2, 1) == doctest::Approx(512.0).epsilon(1e-12));
  CHECK(delta_via_cumulants(c2, 0) ==
        doctest::Approx(delta(c2, 0).value).epsilon(1e-12));

  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = canonicalize(fuzz_coeffs(gen));
    for (int r = 0; r <= 4; ++r) {
      CHECK(rel_close(delta(spec, r).value, delta_via_cumulants(spec, r), 1e-10));
    }
  }
}

TEST_CASE("cov_32_21") {
  CHECK(cov_32_21(canonicalize({1.0, 1.0})) == 0.0);
  CHECK(cov_32_21(canonicalize({2.0})) == doctest::Approx(2048.0));
  // 64 * (-0.5)^5 * (1.5)^2 = -4.5
  CHECK(cov_32_21(canonicalize({-0.5})) == doctest::Approx(-4.5).epsilon(1e-14));

  // cumulant-combination oracle: kappa_7/6! - 4 kappa_6/5! + 4 kappa_5/4!
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = canonicalize(fuzz_coeffs(gen));
    const double k7 = cumulant(spec, 7), k6 = cumulant(spec, 6),
                 k5 = cumulant(spec, 5);
    const double oracle = k7 / 720.0 - 4.0 * k6 / 120.0 + 4.0 * k5 / 24.0;
    CHECK(rel_close(cov_32_21(spec), oracle, 1e-9));
  }
}

TEST_CASE("phi and the beta=1 identity") {
  auto ones = canonicalize({1.0, 1.0});
  for (double beta : {-2.0, 0.0, 0.3, 1.0}) CHECK(phi(ones, beta) == 0.0);

  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = canonicalize(fuzz_coeffs(gen));

    // Phi(1) = 2^7 sum (c^2 - c)^4
    long double direct = 0.0L;
    for (double c : spec.coeffs()) {
      const long double g = static_cast<long double>(c) * c - c;
      direct += g * g * g * g;
    }
    direct *= 128.0L;
    CHECK(rel_close(phi(spec, 1.0), static_cast<double>(direct), 1e-10));

    // Phi is even and equals var_x - 4 b^2 cov + 4 b^4 var_y
    const PhiProfile prof = phi_profile(spec);
    for (double beta : {0.4, 1.7}) {
      CHECK(rel_close(phi(spec, beta), phi(spec, -beta), 1e-12));
      const double b2 = beta * beta;
      const double quad =
          prof.var_x - 4.0 * b2 * prof.cov_xy + 4.0 * b2 * b2 * prof.var_y;
      CHECK(std::abs(phi(spec, beta) - quad) <=
            1e-9 * std::max({prof.var_x, 4.0 * b2 * b2 * prof.var_y, 1.0}));
    }

    // 2 Delta_0^2 = Phi(1) + B/2
    const double d0 = delta(spec, 0).value;
    long double sum_t = 0.0L, sum_t2 = 0.0L;
    for (double c : spec.coeffs()) {
      const long double t = 16.0L * (static_cast<long double>(c) * c - c) *
                            (static_cast<long double>(c) * c - c);
      sum_t += t;
      sum_t2 += t * t;
    }
    const double big_b = static_cast<double>(sum_t * sum_t - sum_t2);
    CHECK(rel_close(2.0 * d0 * d0, phi(spec, 1.0) + big_b / 2.0, 1e-10));

    // Phi(beta_min) is the minimum over a beta grid
    if (!prof.degenerate && !prof.negative_cov) {
      const double at_min = phi(spec, prof.beta_min);
      for (double beta = -2.0; beta <= 2.0; beta += 0.05) {
        CHECK(at_min <= phi(spec, beta) * (1.0 + 1e-9) + 1e-12);
      }
      // Phi(0) = Phi(beta0) = Delta_2
      CHECK(rel_close(phi(spec, 0.0), delta(spec, 2).value, 1e-12));
      CHECK(std::abs(phi(spec, prof.beta0) - delta(spec, 2).value) <=
            1e-9 * std::max(1.0, delta(spec, 2).value));
    }

    // case (I): nonnegative covariance and beta0 <= 1
    if (!prof.degenerate && !prof.negative_cov && prof.beta0 <= 1.0) {
      CHECK(delta(spec, 2).value <= phi(spec, 1.0) * (1.0 + 1e-9) + 1e-12);
      CHECK(phi(spec, 1.0) <= 2.0 * d0 * d0 * (1.0 + 1e-9) + 1e-12);
    }
  }
}

TEST_CASE("phi_profile") {
  CHECK(phi_profile(canonicalize({1.0, 1.0})).degenerate);

  const PhiProfile prof = phi_profile(family(Family::concrete, 10));
  CHECK(!prof.degenerate);
  CHECK(prof.beta0 == doctest::Approx(std::sqrt(2.0) * prof.beta_min));
  CHECK(prof.cov_xy * prof.cov_xy <= prof.var_x * prof.var_y * (1.0 + 1e-12));

  // covariance-zero counterexample: x^2+y^2 = 2, x^5(x-1)^2 + y^5(y-1)^2 = 0.
  // Solve the pair to refine the printed (1.27, -0.62).
  auto residual = [](double x) {
    const double y = -std::sqrt(2.0 - x * x);
    return std::pow(x, 5) * (x - 1.0) * (x - 1.0) +
           std::pow(y, 5) * (y - 1.0) * (y - 1.0);
  };
  const double x = find_root(residual, 1.2, 1.35, {1e-14, 1e-14, 200});
  const double y = -std::sqrt(2.0 - x * x);
  CHECK(x == doctest::Approx(1.27).epsilon(0.01));
  CHECK(y == doctest::Approx(-0.62).epsilon(0.01));

  auto counter = canonicalize({x, y});
  const PhiProfile cp = phi_profile(counter);
  // Cov = 0 at the refined root, yet Delta_1 stays positive: not Gamma
  CHECK(std::abs(cp.cov_xy) <= 1e-10 * cp.var_y);
  CHECK(cp.beta_min <= 1e-5);
  CHECK(delta(counter, 1).value > 0.1);
}

TEST_CASE("psi2") {
  auto ones = canonicalize({1.0, 1.0});
  CHECK(psi2(ones, 0.0, 0.0).value == 0.0);
  CHECK(psi2(ones, 1.0, 1.0).value == 0.0);  // isotropic on the Gamma law

  CHECK(psi2(canonicalize({2.0}), 1.0, 0.0).value == doctest::Approx(8192.0));

  // Cauchy-Schwarz and positivity away from the Gamma law
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = canonicalize(fuzz_coeffs(gen));
    const Psi2Value p = psi2(spec, 0.7, -0.4);
    CHECK(p.value >= 0.0);
    CHECK(p.gram_det >= -1e-9 * delta(spec, 2).value * delta(spec, 1).value -
                            1e-12);
    if (p.gram_det > 0.0) {
      // minimum of the form over the unit circle is the smallest eigenvalue;
      // 2 det / (tr + sqrt(tr^2 - 4 det)) avoids the cancellation
      const double var_x = delta(spec, 2).value;
      const double var_y4 = 4.0 * delta(spec, 1).value;
      const double off = -2.0 * cov_32_21(spec);
      const double tr = var_x + var_y4;
      const double det = var_x * var_y4 - off * off;
      const double lam_min =
          2.0 * det / (tr + std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
      CHECK(lam_min > 0.0);
    }
  }
}

TEST_CASE("psi_general") {
  auto spec = canonicalize({1.4, -0.3, 0.9});
  CHECK(psi_general(spec, {1, 3}, {0.0, 0.0}) == 0.0);
  CHECK(psi_general(canonicalize({1.0, 1.0}), {2, 5}, {1.3, -0.2}) ==
        doctest::Approx(0.0));

  // single order r with beta = 1 reduces to Delta_{r-1}
  for (int r = 1; r <= 4; ++r) {
    CHECK(psi_general(spec, {r}, {1.0}) ==
          doctest::Approx(delta(spec, r - 1).value).epsilon(1e-12));
  }

  CHECK_THROWS_AS(psi_general(spec, {1, 2}, {1.0}), std::domain_error);
  CHECK_THROWS_AS(psi_general(spec, {}, {}), std::domain_error);
  CHECK_THROWS_AS(psi_general(spec, {2, 2}, {1.0, 1.0}), std::domain_error);
}

TEST_CASE("discrepancy M") {
  auto conc = family(Family::concrete, 10);
  const double k3gap = std::abs(cumulant_gap_to_target(conc, 3, 2.0));
  CHECK(k3gap == doctest::Approx(0.060037609861032971).epsilon(1e-11));
  CHECK(discrepancy_M(conc, 2.0) == doctest::Approx(0.96).epsilon(1e-12));

  CHECK(discrepancy_M(canonicalize({1.0, 1.0, 1.0}), 3.0) ==
        doctest::Approx(0.0));

  // toy2: both cumulant gaps decay like 1/n, so M does too
  std::vector<std::pair<double, double>> pts;
  for (long n : {100L, 1000L, 10000L, 100000L}) {
    pts.emplace_back(static_cast<double>(n),
                     discrepancy_M(family(Family::toy2, n), 1.0));
  }
  const LogLogFit fit = fit_loglog(pts);
  CHECK(std::abs(fit.slope + 1.0) <= 0.02);
}

TEST_CASE("is_centered_gamma") {
  CHECK(is_centered_gamma(canonicalize({1.0, 1.0, 1.0}), 3.0, 1e-8).is_gamma);

  const GammaCheck c2 = is_centered_gamma(canonicalize({2.0}), 4.0, 1e-8);
  CHECK(!c2.is_gamma);
  REQUIRE(c2.witness.size() == 1);
  CHECK(c2.witness[0] == doctest::Approx(2.0));

  CHECK(!is_centered_gamma(family(Family::concrete, 10), 2.0, 1e-8).is_gamma);

  // wrong nu fails on the variance precheck
  const GammaCheck wrong = is_centered_gamma(canonicalize({1.0, 1.0}), 3.0, 1e-8);
  CHECK(!wrong.is_gamma);
  CHECK(wrong.reason.find("variance") != std::string::npos);
}

TEST_CASE("trace sign") {
  CHECK(trace_sign(canonicalize({1.0, 1.0})) == TraceSign::nonneg);
  CHECK(trace_sign(canonicalize({2.0, -0.5})) == TraceSign::nonneg);
  CHECK(trace_sign(canonicalize({0.5, 2.0})) == TraceSign::neither);
  CHECK(trace_sign(canonicalize({0.5, 0.3})) == TraceSign::nonpos);
}

TEST_CASE("trace-class bound") {
  const TraceClassCheck ones = trace_class_bound_check(canonicalize({1.0, 1.0}));
  CHECK(ones.lhs == 0.0);
  CHECK(ones.rhs == doctest::Approx(0.0));
  CHECK(ones.holds);

  const TraceClassCheck two = trace_class_bound_check(canonicalize({2.0}));
  CHECK(two.lhs == doctest::Approx(8192.0));
  CHECK(two.rhs == doctest::Approx(72.0 * std::pow(768.0 - 6.0 * 64.0, 2)));
  CHECK(two.holds);

  // sign condition satisfied => bound holds, 200 fuzz cases
  std::mt19937_64 gen(71);
  std::uniform_int_distribution<int> len(1, 10);
  std::uniform_real_distribution<double> inside(0.0, 1.0);
  std::uniform_real_distribution<double> outside(-3.0, 3.0);
  int checked = 0;
  while (checked < 200) {
    std::vector<double> c(len(gen));
    const bool in01 = checked % 2 == 0;
    for (double& x : c) {
      do {
        x = in01 ? inside(gen) : outside(gen);
      } while (x == 0.0 || (!in01 && x > 0.0 && x < 1.0));
    }
    auto spec = canonicalize(c);
    REQUIRE(trace_sign(spec) != TraceSign::neither);
    CHECK(trace_class_bound_check(spec).holds);
    ++checked;
  }

  // mixed-sign spec: the pair is still reported
  const TraceClassCheck mixed = trace_class_bound_check(canonicalize({0.5, 2.0}));
  CHECK(mixed.lhs > 0.0);
  CHECK(mixed.rhs > 0.0);
}

TEST_CASE("ratio condition") {
  CHECK(!ratio_condition(canonicalize({1.0, 1.0})).has_value());
  CHECK(ratio_condition(canonicalize({2.0})).value() == doctest::Approx(2.0));
  // c = (-1, t) approaches -1 as t -> 0+
  CHECK(ratio_condition(canonicalize({-1.0, 1e-4})).value() ==
        doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("cumulant gap |E Gamma_{r+1} - 2 E Gamma_r|") {
  auto ones = canonicalize({1.0, 1.0, 1.0});
  for (int r = 1; r <= 6; ++r) {
    CHECK(cumulant_gap(ones, r) == doctest::Approx(0.0).epsilon(1e-12));
  }
  // c = (2), r = 1: |kappa_3/2! - 2 kappa_2| = |32 - 16|
  CHECK(cumulant_gap(canonicalize({2.0}), 1) == doctest::Approx(16.0));

  // the gaps decay at the same rate as M along the concrete family
  std::vector<std::pair<double, double>> gap_pts, m_pts;
  for (long n : {100L, 1000L, 10000L}) {
    auto spec = family(Family::concrete, n);
    gap_pts.emplace_back(static_cast<double>(n), cumulant_gap(spec, 2));
    m_pts.emplace_back(static_cast<double>(n), discrepancy_M(spec, 2.0));
  }
  CHECK(std::abs(fit_loglog(gap_pts).slope - fit_loglog(m_pts).slope) <= 0.05);
}

TEST_CASE("mixed Gamma detection") {
  const auto all_ones = mixed_gamma_detect(canonicalize({1.0, 1.0, 1.0}), 1e-9);
  REQUIRE(all_ones.has_value());
  CHECK(all_ones->l1 == 0);
  CHECK(all_ones->l2 == 3);

  const auto two_groups =
      mixed_gamma_detect(canonicalize({1.5, 1.5, 1.0, 1.0}), 1e-9);
  REQUIRE(two_groups.has_value());
  CHECK(two_groups->k == doctest::Approx(3.0));
  CHECK(two_groups->l1 == 2);
  CHECK(two_groups->l2 == 2);

  CHECK(!mixed_gamma_detect(canonicalize({1.2, 0.9}), 1e-9).has_value());
}

TEST_CASE("chain and log-convexity of the Delta sequence") {
  std::mt19937_64 gen(2025);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = canonicalize(fuzz_coeffs(gen));
    const double nu = variance(spec) / 2.0;
    std::vector<double> d;
    for (int r = 0; r <= 5; ++r) d.push_back(delta(spec, r).value);
    for (int r = 0; r <= 3; ++r) {
      CHECK(d[r + 1] <= 4.0 * nu * d[r] * (1.0 + 1e-12) + 1e-280);
      CHECK(d[r] <= std::pow(4.0 * nu, r) * d[0] * (1.0 + 1e-11) + 1e-280);
      CHECK(d[r + 1] * d[r + 1] <= d[r] * d[r + 2] * (1.0 + 1e-11) + 1e-280);
    }
  }
}

TEST_CASE("kappa_4/6 equals Var(Gamma_1) on the second chaos") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = canonicalize(fuzz_coeffs(gen));
    long double s4 = 0.0L;
    for (double c : spec.coeffs()) {
      s4 += static_cast<long double>(c) * c * c * c;
    }
    const double var_gamma1 = static_cast<double>(8.0L * s4);
    CHECK(rel_close(cumulant(spec, 4) / 6.0, var_gamma1, 1e-12));
  }
}

TEST_CASE("Monte Carlo consistency of delta") {
  auto spec = family(Family::concrete, 10);
  auto js = sample_joint(spec, 3, 300000, 606);
  for (int r = 0; r <= 2; ++r) {
    std::vector<double> diff(js.size());
    for (std::size_t i = 0; i < js.size(); ++i) {
      const double hi = js.gamma_bars[static_cast<std::size_t>(r)][i];
      const double lo = r == 0 ? js.f_values[i]
                               : js.gamma_bars[static_cast<std::size_t>(r - 1)][i];
      diff[i] = hi - 2.0 * lo;
    }
    const int batches = 60;
    const std::size_t bs = diff.size() / batches;
    std::vector<double> vars;
    for (int b = 0; b < batches; ++b) {
      double mu = 0.0;
      for (std::size_t i = b * bs; i < (b + 1) * bs; ++i) mu += diff[i];
      mu /= static_cast<double>(bs);
      double s = 0.0;
      for (std::size_t i = b * bs; i < (b + 1) * bs; ++i) {
        s += (diff[i] - mu) * (diff[i] - mu);
      }
      vars.push_back(s / static_cast<double>(bs - 1));
    }
    double mean = 0.0;
    for (double v : vars) mean += v;
    mean /= batches;
    double var = 0.0;
    for (double v : vars) var += (v - mean) * (v - mean);
    var /= (batches - 1);
    const double se = std::sqrt(var / batches);
    CHECK(std::abs(mean - delta(spec, r).value) <= 5.0 * se);
  }
}
