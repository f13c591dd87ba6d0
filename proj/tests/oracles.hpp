#pragma once
// Reference computations shared by the unit tests. Independent of the
// library code paths they check.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>

#include "clab/lp_core.hpp"
#include "clab/operator.hpp"

namespace oracle {

using big = boost::multiprecision::cpp_dec_float_50;

inline big bpow(big a, double e) { return boost::multiprecision::pow(boost::multiprecision::abs(a), big(e)); }

inline double norm50(double a, double b, double p) {
  const big s = bpow(big(a), p) + bpow(big(b), p);
  return static_cast<double>(boost::multiprecision::pow(s, big(1) / big(p)));
}

// |(T v)_q| by brute force over n sphere samples (angle grid on [0, pi)).
inline double brute_norm(const clab::Operator2x2& t, int n) {
  const double p = t.domain.value(), q = t.codomain.value();
  double best = 0;
  for (int i = 0; i < n; ++i) {
    const double th = M_PI * i / n;
    const double c = std::cos(th), s = std::sin(th);
    const double nv = std::pow(std::pow(std::fabs(c), p) + std::pow(std::fabs(s), p), 1 / p);
    const double v1 = c / nv, v2 = s / nv;
    const double w1 = t.a11 * v1 + t.a12 * v2, w2 = t.a21 * v1 + t.a22 * v2;
    best = std::max(best, std::pow(std::pow(std::fabs(w1), q) + std::pow(std::fabs(w2), q), 1 / q));
  }
  return best;
}

// F_p(x, r) in long double, straight from the definition.
inline long double big_f_ld(const clab::LpVector& x, long double r) {
  const long double p = x.exponent.value();
  const long double x1 = x.x1, x2 = x.x2;
  const long double a1 = -std::copysign(std::pow(std::fabs(x2), p - 1), x2);
  const long double a2 = std::copysign(std::pow(std::fabs(x1), p - 1), x1);
  return std::pow(std::fabs(x1 + r * a1), p) + std::pow(std::fabs(x2 + r * a2), p);
}

// Derivatives 0..4 at 0 by 4th-order central stencils with a Richardson step.
template <class G>
std::array<long double, 5> derivatives(G&& g, long double h) {
  auto d = [&](long double s) {
    const long double gm2 = g(-2 * s), gm1 = g(-s), g0 = g(0), g1 = g(s), g2 = g(2 * s);
    return std::array<long double, 5>{g0, (g1 - gm1) / (2 * s), (g1 - 2 * g0 + gm1) / (s * s),
                                      (g2 - 2 * g1 + 2 * gm1 - gm2) / (2 * s * s * s),
                                      (g2 - 4 * g1 + 6 * g0 - 4 * gm1 + gm2) / (s * s * s * s)};
  };
  const auto a = d(h), b = d(h / 2);
  std::array<long double, 5> c{};
  for (int k = 0; k < 5; ++k) c[k] = (4 * b[k] - a[k]) / 3;
  c[0] = a[0];
  return c;
}

}  // namespace oracle
