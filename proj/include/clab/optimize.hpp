#pragma once

#include <cmath>

namespace clab {

struct ArgValue {
  double arg;
  double value;
};

// Golden-section search for a maximum of f on [a, b]; stops when the bracket
// is narrower than tol or after max_iter steps.
template <class F>
ArgValue golden_max(F&& f, double a, double b, double tol, int max_iter = 200) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? ArgValue{c, fc} : ArgValue{d, fd};
}

template <class F>
ArgValue golden_min(F&& f, double a, double b, double tol, int max_iter = 200) {
  ArgValue r = golden_max([&](double t) { return -f(t); }, a, b, tol, max_iter);
  r.value = -r.value;
  return r;
}

// Bisection on a sign change of g over [a, b] (g(a), g(b) of opposite sign).
template <class G>
double bisect_sign_change(G&& g, double a, double b, double ga, int max_iter = 200) {
  for (int it = 0; it < max_iter; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double gm = g(m);
    if (gm == 0.0) return m;
    if ((gm > 0) == (ga > 0)) {
      a = m;
      ga = gm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace clab
