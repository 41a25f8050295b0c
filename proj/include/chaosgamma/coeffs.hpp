#pragma once

#include <optional>
#include <vector>

#include "chaosgamma/chaos2.hpp"

namespace chaosgamma {

/// Multi-index (r_1,...,r_s) of the contraction sums for chaos order q.
struct IndexTuple {
  int q;
  std::vector<int> rs;
};

/// Admissibility: 1 <= r_k <= min(kq - 2(r_1+...+r_{k-1}), q) for every k,
/// and r_1 + ... + r_k < (k+1) q / 2 for k < s.
bool admissible(const IndexTuple& t);

struct CoeffValue {
  double value;
  bool excluded;  // an indicator kills the term; value is 0
};

/// Recursive contraction constant:
///   c_q(r) = q (r-1)! C(q-1,r-1)^2,
///   c_q(r_1..r_s) = (sq - 2 r_1 - ... - 2 r_{s-1}) (r_s-1)!
///                   C(sq-2r_1-...-2r_{s-1}-1, r_s-1) C(q-1, r_s-1)
///                   c_q(r_1..r_{s-1}).
CoeffValue c_new(const IndexTuple& t);

/// Same recursion with leading factor q in place of (sq - 2 r_1 - ...).
CoeffValue c_alt(const IndexTuple& t);

/// All tuples with nonzero indicator product, lexicographic. q <= 5, s <= 6.
std::vector<IndexTuple> enumerate_admissible(int q, int s);

/// c_new == c_alt on every admissible q=2 tuple with s <= s_max.
bool verify_q2_equality(int s_max);

/// First admissible tuple (by s, then lexicographic) where the two constants
/// differ, if any.
std::optional<IndexTuple> find_coeff_mismatch(int q, int s_max);

struct Gamma3Identity {
  double lhs;  // kappa_4 / 3!
  double rhs;  // kappa_4 / 3 - Var(Gamma_1) with Var(Gamma_1) = 8 sum c^4
  bool ok;
};

Gamma3Identity gamma3_identity_check(const EigenvalueSpec& spec);

}  // namespace chaosgamma
