#include "chaosgamma/coeffs.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "compensated.hpp"

namespace chaosgamma {

namespace {

using u128 = unsigned __int128;

[[noreturn]] void numeric_overflow() {
  throw std::overflow_error("coeffs: constant exceeds 128-bit range");
}

u128 mul(u128 a, u128 b) {
  if (a != 0 && b > ~u128(0) / a) numeric_overflow();
  return a * b;
}

u128 factorial(int k) {
  u128 f = 1;
  for (int i = 2; i <= k; ++i) f = mul(f, u128(i));
  return f;
}

u128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 out = 1;
  for (int i = 1; i <= k; ++i) {
    out = mul(out, u128(n - k + i));
    out /= u128(i);
  }
  return out;
}

int prefix_sum(const std::vector<int>& rs, std::size_t upto) {
  int s = 0;
  for (std::size_t i = 0; i < upto; ++i) s += rs[i];
  return s;
}

// shared recursion; alt switches the leading factor of every step after the base
u128 coeff_int(int q, const std::vector<int>& rs, bool alt) {
  const int s = static_cast<int>(rs.size());
  if (s == 1) {
    u128 base = mul(u128(q), factorial(rs[0] - 1));
    u128 bin = binomial(q - 1, rs[0] - 1);
    return mul(base, mul(bin, bin));
  }
  std::vector<int> prefix(rs.begin(), rs.end() - 1);
  const int sum_prefix = prefix_sum(rs, rs.size() - 1);
  const int rs_last = rs.back();
  const int first = alt ? q : (s * q - 2 * sum_prefix);
  u128 out = mul(u128(first), factorial(rs_last - 1));
  out = mul(out, binomial(s * q - 2 * sum_prefix - 1, rs_last - 1));
  out = mul(out, binomial(q - 1, rs_last - 1));
  return mul(out, coeff_int(q, prefix, alt));
}

std::map<std::pair<int, std::vector<int>>, double> g_memo_new;
std::map<std::pair<int, std::vector<int>>, double> g_memo_alt;
std::mutex g_memo_mutex;

double coeff_memoized(const IndexTuple& t, bool alt) {
  auto& memo = alt ? g_memo_alt : g_memo_new;
  const std::pair<int, std::vector<int>> key{t.q, t.rs};
  {
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const double value = static_cast<double>(coeff_int(t.q, t.rs, alt));
  std::lock_guard<std::mutex> lock(g_memo_mutex);
  memo.emplace(key, value);
  return value;
}

void check_tuple_shape(const IndexTuple& t) {
  if (t.q < 1) throw std::domain_error("IndexTuple: q must be >= 1");
  if (t.rs.empty()) throw std::domain_error("IndexTuple: rs must be nonempty");
  for (int r : t.rs) {
    if (r < 1) throw std::domain_error("IndexTuple: entries must be >= 1");
  }
}

}  // namespace

bool admissible(const IndexTuple& t) {
  check_tuple_shape(t);
  const int q = t.q;
  const int s = static_cast<int>(t.rs.size());
  int sum = 0;
  for (int k = 1; k <= s; ++k) {
    const int rk = t.rs[static_cast<std::size_t>(k - 1)];
    const int upper = std::min(k * q - 2 * sum, q);
    if (rk > upper) return false;
    sum += rk;
    if (k < s && 2 * sum >= (k + 1) * q) return false;  // indicator fails
  }
  return true;
}

CoeffValue c_new(const IndexTuple& t) {
  check_tuple_shape(t);
  if (!admissible(t)) return {0.0, true};
  return {coeff_memoized(t, false), false};
}

CoeffValue c_alt(const IndexTuple& t) {
  check_tuple_shape(t);
  if (!admissible(t)) return {0.0, true};
  return {coeff_memoized(t, true), false};
}

std::vector<IndexTuple> enumerate_admissible(int q, int s) {
  if (q < 1 || s < 1) throw std::domain_error("enumerate_admissible: q,s >= 1");
  if (q > 5 || s > 6) {
    throw std::domain_error("enumerate_admissible: capped at q <= 5, s <= 6");
  }
  std::vector<IndexTuple> out;
  std::vector<int> rs;
  auto dfs = [&](auto&& self, int k, int sum) -> void {
    if (k > s) {
      out.push_back({q, rs});
      return;
    }
    const int upper = std::min(k * q - 2 * sum, q);
    for (int r = 1; r <= upper; ++r) {
      if (k < s && 2 * (sum + r) >= (k + 1) * q) continue;
      rs.push_back(r);
      self(self, k + 1, sum + r);
      rs.pop_back();
    }
  };
  dfs(dfs, 1, 0);
  return out;
}

bool verify_q2_equality(int s_max) {
  if (s_max < 1) throw std::domain_error("verify_q2_equality: s_max >= 1");
  return !find_coeff_mismatch(2, s_max).has_value();
}

std::optional<IndexTuple> find_coeff_mismatch(int q, int s_max) {
  for (int s = 1; s <= s_max; ++s) {
    for (const IndexTuple& t : enumerate_admissible(q, s)) {
      if (c_new(t).value != c_alt(t).value) return t;
    }
  }
  return std::nullopt;
}

Gamma3Identity gamma3_identity_check(const EigenvalueSpec& spec) {
  Gamma3Identity out;
  const double k4 = cumulant(spec, 4);
  out.lhs = k4 / 6.0;
  const double var_gamma1 =
      detail::dd_mul(detail::power_sum_dd(spec.coeffs(), 4), 8.0).to_double();
  out.rhs = k4 / 3.0 - var_gamma1;
  out.ok = std::abs(out.lhs - out.rhs) <= 1e-12 * std::max(1.0, std::abs(out.lhs));
  return out;
}

}  // namespace chaosgamma
