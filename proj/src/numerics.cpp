#include "chaosgamma/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chaosgamma/errors.hpp"

namespace chaosgamma {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double kummer_series(double a, double b, double z, const Tolerance& tol) {
  double sum = 1.0;
  double comp = 0.0;  // Kahan carry
  double term = 1.0;
  for (long k = 0; k < tol.max_iter; ++k) {
    term *= (a + static_cast<double>(k)) * z /
            ((b + static_cast<double>(k)) * static_cast<double>(k + 1));
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    double ratio = std::abs((a + k + 1) * z / ((b + k + 1) * (k + 2)));
    if (ratio < 1.0 && std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
  }
  throw numeric_error("kummer_m: series did not converge", sum, std::abs(term));
}

// --- Gauss-Kronrod (G7,K15) panel rule, QUADPACK dqk15 constants ----------

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
  double resabs = 0.0;
};

PanelEstimate g7k15(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv1[7], fv2[7];
  const double fc = f(centre);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = f(centre - absc);
    const double f2 = f(centre + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    const double fsum = f1 + f2;
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = f(centre - absc);
    const double f2 = f(centre + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    const double fsum = f1 + f2;
    resk += kWgk[jtwm1] * fsum;
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  PanelEstimate out;
  out.value = resk * hlgth;
  resabs *= std::abs(hlgth);
  resasc *= std::abs(hlgth);
  out.resabs = resabs;
  out.error = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && out.error != 0.0) {
    out.error = resasc * std::min(1.0, std::pow(200.0 * out.error / resasc, 1.5));
  }
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * kEps)) {
    out.error = std::max(kEps * 50.0 * resabs, out.error);
  }
  return out;
}

struct Panel {
  double a, b, value, error, resabs;
  bool operator<(const Panel& other) const { return error < other.error; }
};

IntegralResult integrate_finite(const std::function<double(double)>& f,
                                double a, double b, const Tolerance& tol) {
  std::vector<Panel> heap;
  std::vector<Panel> frozen;  // panels at roundoff or too narrow to split

  auto push = [&](double lo, double hi) {
    PanelEstimate e = g7k15(f, lo, hi);
    Panel p{lo, hi, e.value, e.error, e.resabs};
    // at the roundoff floor further splitting cannot reduce the estimate
    if (e.error <= 51.0 * kEps * e.resabs) {
      frozen.push_back(p);
      return;
    }
    heap.push_back(p);
    std::push_heap(heap.begin(), heap.end());
  };

  push(a, b);
  long evals = 15;

  auto totals = [&]() {
    double v = 0.0, vc = 0.0, err = 0.0, mass = 0.0;
    for (const auto& list : {heap, frozen}) {
      for (const Panel& p : list) {
        double y = p.value - vc;
        double t = v + y;
        vc = (t - v) - y;
        v = t;
        err += p.error;
        mass += p.resabs;
      }
    }
    return std::tuple<double, double, double>(v, err, mass);
  };

  for (;;) {
    auto [value, errsum, mass] = totals();
    // the achievable accuracy is limited by roundoff on the total |f| mass
    const double target = std::max({tol.abs_tol, tol.rel_tol * std::abs(value),
                                    55.0 * kEps * mass});
    if (errsum <= target) return {value, errsum};
    if (heap.empty()) {
      // everything saturated at roundoff; report honestly
      if (errsum > 4.0 * target) {
        throw numeric_error("integrate: roundoff saturation before tolerance",
                            value, errsum);
      }
      return {value, errsum};
    }
    if (evals + 30 > tol.max_iter) {
      throw numeric_error("integrate: subdivision limit exceeded", value, errsum);
    }
    std::pop_heap(heap.begin(), heap.end());
    Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      frozen.push_back(worst);
      continue;
    }
    push(worst.a, mid);
    push(mid, worst.b);
    evals += 30;
  }
}

}  // namespace

double kummer_m(double a, double b, double z, const Tolerance& tol) {
  if (b <= 0.0 && b == std::floor(b)) {
    throw std::domain_error("kummer_m: b must not be a non-positive integer");
  }
  if (!(std::abs(z) < 700.0)) {
    throw std::domain_error("kummer_m: |z| must be below 700");
  }
  if (z < 0.0) return std::exp(z) * kummer_series(b - a, b, -z, tol);
  return kummer_series(a, b, z, tol);
}

double reg_lower_gamma(double s, double x) {
  if (!(s > 0.0)) throw std::domain_error("reg_lower_gamma: s must be positive");
  if (!(x >= 0.0)) throw std::domain_error("reg_lower_gamma: x must be nonnegative");
  if (x == 0.0) return 0.0;

  const double logpre = -x + s * std::log(x) - std::lgamma(s);
  if (x < s + 1.0) {
    // series for P
    double ap = s;
    double sum = 1.0 / s;
    double del = sum;
    for (int k = 0; k < 100000; ++k) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * kEps) {
        return std::min(1.0, sum * std::exp(logpre));
      }
    }
    throw numeric_error("reg_lower_gamma: series did not converge");
  }
  // modified Lentz continued fraction for Q
  const double fpmin = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - s;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) <= kEps) {
      return std::max(0.0, 1.0 - h * std::exp(logpre));
    }
  }
  throw numeric_error("reg_lower_gamma: continued fraction did not converge");
}

IntegralResult integrate(const std::function<double(double)>& f, double a,
                         double b, const Tolerance& tol) {
  if (std::isnan(a) || std::isnan(b) || std::isinf(a)) {
    throw std::domain_error("integrate: lower limit must be finite");
  }
  if (a == b) return {0.0, 0.0};
  if (std::isinf(b)) {
    // x = a + t/(1-t) maps [0,1) onto [a, inf)
    auto g = [&f, a](double t) {
      const double om = 1.0 - t;
      const double x = a + t / om;
      const double fx = f(x);
      if (fx == 0.0) return 0.0;
      return fx / (om * om);
    };
    return integrate_finite(g, 0.0, 1.0, tol);
  }
  if (a > b) {
    IntegralResult r = integrate_finite(f, b, a, tol);
    return {-r.value, r.error_bound};
  }
  return integrate_finite(f, a, b, tol);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
  double a = std::min(lo, hi);
  double b = std::max(lo, hi);
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) {
    throw std::domain_error("find_root: no sign change on the bracket");
  }

  // Brent: inverse quadratic / secant with bisection safeguard.
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (long iter = 0; iter < tol.max_iter; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol.abs_tol;
    const double xm = 0.5 * (c - b);
    if ((std::abs(xm) <= tol1 && std::abs(fb) <= tol.abs_tol) || fb == 0.0) {
      return b;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  throw numeric_error("find_root: iteration limit reached", b, std::abs(fb));
}

LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    throw std::domain_error("fit_loglog: at least two points required");
  }
  double sx = 0, sy = 0;
  for (const auto& [n, y] : points) {
    if (!(n > 0.0) || !(y > 0.0)) {
      throw std::domain_error("fit_loglog: coordinates must be positive");
    }
    sx += std::log(n);
    sy += std::log(y);
  }
  const double m = static_cast<double>(points.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [n, y] : points) {
    const double dx = std::log(n) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::domain_error("fit_loglog: all n coincide");

  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ssres = 0.0;
    for (const auto& [n, y] : points) {
      const double r = std::log(y) - (fit.intercept + fit.slope * std::log(n));
      ssres += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ssres / syy, 0.0, 1.0);
  }
  return fit;
}

}  // namespace chaosgamma
