#include "hp.hpp"

#include <algorithm>

extern "C" {
#include <quadmath.h>
}

namespace clab::detail {

q128 spow_q(q128 v, q128 e) {
  if (v == 0) return 0;
  const q128 m = powq(fabsq(v), e);
  return v > 0 ? m : -m;
}

void sphere_point_q(q128 theta, double p, q128& v1, q128& v2) {
  const q128 e = q128(2) / q128(p);
  v1 = spow_q(cosq(theta), e);
  v2 = spow_q(sinq(theta), e);
}

QOp to_quad(const Operator2x2& t) {
  return {t.a11, t.a12, t.a21, t.a22, t.domain.value(), t.codomain.value()};
}

Operator2x2 to_double(const QOp& t) {
  return {static_cast<double>(t.a11), static_cast<double>(t.a12), static_cast<double>(t.a21),
          static_cast<double>(t.a22), Exponent::unrestricted(t.p), Exponent::unrestricted(t.q)};
}

QOp qop_add(const QOp& a, const QOp& b, q128 s) {
  return {a.a11 + s * b.a11, a.a12 + s * b.a12, a.a21 + s * b.a21, a.a22 + s * b.a22, a.p, a.q};
}

q128 excess_q(const QOp& t, q128 theta) {
  q128 v1, v2;
  sphere_point_q(theta, t.p, v1, v2);
  const q128 z1 = t.a11 * v1 + t.a12 * v2;
  const q128 z2 = t.a21 * v1 + t.a22 * v2;
  const q128 q = t.q;
  return powq(fabsq(z1), q) + powq(fabsq(z2), q) - 1;
}

HpPeak refine_peak_hp(const QOp& t, q128 a0, q128 b0) {
  const q128 invphi = (sqrtq(q128(5)) - 1) / 2;
  q128 a = a0, b = b0;
  q128 c = b - invphi * (b - a);
  q128 d = a + invphi * (b - a);
  q128 fc = excess_q(t, c), fd = excess_q(t, d);
  for (int it = 0; it < 180 && (b - a) > q128(1e-32); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = excess_q(t, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = excess_q(t, d);
    }
  }
  HpPeak best = fc >= fd ? HpPeak{c, fc} : HpPeak{d, fd};
  // Bracket ends, so a monotone function on the bracket is covered too.
  for (q128 e : {a0, b0}) {
    const q128 fe = excess_q(t, e);
    if (fe > best.excess) best = {e, fe};
  }
  return best;
}

// Stationarity of ‖T v(theta)‖_q^q on the l^p sphere, in quad.
q128 stationarity_q(const QOp& t, q128 theta) {
  q128 v1, v2;
  sphere_point_q(theta, t.p, v1, v2);
  const q128 qm1 = t.q - 1, pm1 = t.p - 1;
  const q128 z1 = spow_q(t.a11 * v1 + t.a12 * v2, qm1);
  const q128 z2 = spow_q(t.a21 * v1 + t.a22 * v2, qm1);
  const q128 w1 = t.a11 * z1 + t.a21 * z2;
  const q128 w2 = t.a12 * z1 + t.a22 * z2;
  return w1 * spow_q(v2, pm1) - w2 * spow_q(v1, pm1);
}

// Maximizer angle to quad accuracy: golden section, then a sign change of
// the stationarity function when one can be bracketed.
q128 polish_maximizer_q(const QOp& t, double theta, double h) {
  const HpPeak pk = refine_peak_hp(t, q128(theta) - q128(h), q128(theta) + q128(h));
  for (q128 delta : {q128(1e-16), q128(1e-12), q128(1e-9), q128(1e-7)}) {
    q128 a = pk.theta - delta, b = pk.theta + delta;
    q128 ca = stationarity_q(t, a), cb = stationarity_q(t, b);
    if (ca == 0) return a;
    if (cb == 0) return b;
    if ((ca > 0) == (cb > 0)) continue;
    for (int it = 0; it < 200 && b - a > q128(1e-40); ++it) {
      const q128 m = (a + b) / 2;
      const q128 cm = stationarity_q(t, m);
      if (cm == 0) return m;
      if ((cm > 0) == (ca > 0)) {
        a = m;
        ca = cm;
      } else {
        b = m;
      }
    }
    const q128 m = (a + b) / 2;
    q128 u1, u2, w1, w2;
    sphere_point_q(m, t.p, u1, u2);
    sphere_point_q(pk.theta, t.p, w1, w2);
    auto g = [&](q128 v1, q128 v2) {
      return powq(fabsq(t.a11 * v1 + t.a12 * v2), t.q) + powq(fabsq(t.a21 * v1 + t.a22 * v2), t.q);
    };
    return g(u1, u2) >= g(w1, w2) ? m : pk.theta;
  }
  return pk.theta;
}

HpPeak max_excess_hp(const QOp& t, const ScanSummary& s, double g_floor) {
  HpPeak best{0, -1};
  bool any = false;
  for (size_t k = 0; k < s.cand_theta.size(); ++k) {
    if (s.cand_g[k] < g_floor) continue;
    const q128 th = s.cand_theta[k];
    const HpPeak pk = refine_peak_hp(t, th - s.h, th + s.h);
    if (!any || pk.excess > best.excess) best = pk;
    any = true;
  }
  return best;
}

}  // namespace clab::detail
