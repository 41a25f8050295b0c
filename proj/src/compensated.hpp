#pragma once

// Double-double helpers for the cumulant/trace sums. The stored eigenvalues
// are treated as exact and the power sums are accumulated to ~2x double
// precision, so cumulant combinations survive their cancellations.

#include <cmath>
#include <cstddef>
#include <vector>

namespace chaosgamma::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  dd() = default;
  explicit dd(double x) : hi(x), lo(0.0) {}
  dd(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd dd_add(const dd& a, const dd& b) {
  dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_add(const dd& a, double b) {
  dd s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline dd dd_sub(const dd& a, const dd& b) { return dd_add(a, dd(-b.hi, -b.lo)); }

inline dd dd_mul(const dd& a, const dd& b) {
  dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul(const dd& a, double b) {
  dd p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(const dd& a, double b) {
  double q1 = a.hi / b;
  dd r = dd_sub(a, two_prod(q1, b));
  double q2 = (r.hi + r.lo) / b;
  return quick_two_sum(q1, q2);
}

/// c^p for integer p >= 0, exact first product then dd accumulation.
inline dd dd_pow(double c, int p) {
  dd acc(1.0);
  for (int k = 0; k < p; ++k) acc = dd_mul(acc, c);
  return acc;
}

/// sum_i c_i^p in double-double.
inline dd power_sum_dd(const std::vector<double>& coeffs, int p) {
  dd acc(0.0);
  for (double c : coeffs) acc = dd_add(acc, dd_pow(c, p));
  return acc;
}

}  // namespace chaosgamma::detail
