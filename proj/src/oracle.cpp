#include "clab/oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "clab/rng.hpp"
#include "hp.hpp"

extern "C" {
#include <quadmath.h>
}

namespace clab {

namespace {

using detail::q128;
using detail::QOp;

struct QDir {
  q128 d[4];
};

QOp with_dir(const QOp& t, const QDir& d, q128 eps) {
  return {t.a11 + eps * d.d[0], t.a12 + eps * d.d[1], t.a21 + eps * d.d[2], t.a22 + eps * d.d[3],
          t.p, t.q};
}

QDir unit_dir(q128 a, q128 b, q128 c, q128 d) {
  const q128 n = sqrtq(a * a + b * b + c * c + d * d);
  return {{a / n, b / n, c / n, d / n}};
}

// x^o ⊗ (y^o)^{q-1} at the quad maximizer x and y = Tx / ‖Tx‖.
QDir segment_direction(const QOp& t, q128 theta) {
  q128 x1, x2;
  detail::sphere_point_q(theta, t.p, x1, x2);
  q128 y1 = t.a11 * x1 + t.a12 * x2;
  q128 y2 = t.a21 * x1 + t.a22 * x2;
  const q128 qq = t.q;
  const q128 ny = powq(powq(fabsq(y1), qq) + powq(fabsq(y2), qq), 1 / qq);
  y1 /= ny;
  y2 /= ny;
  // a = x^o = (-x2, x1), b = (y^o)^{q-1} = (-|y2|^{q-1}, |y1|^{q-1}) signed.
  const q128 a1 = -x2, a2 = x1;
  const q128 b1 = -detail::spow_q(y2, qq - 1), b2 = detail::spow_q(y1, qq - 1);
  return unit_dir(b1 * a1, b1 * a2, b2 * a1, b2 * a2);
}

struct Judge {
  NormOptions nopt;
  q128 limit;  // allowed ‖S‖ excess, e_T + tol_oracle
  double band = 1e-12;

  bool contraction(const QOp& s) const {
    const Operator2x2 sd = detail::to_double(s);
    const double lim = static_cast<double>(limit);
    const auto sum = detail::scan_and_refine(sd, nopt, 1 + lim + band);
    if (sum.exceeded) return false;
    if (sum.best_g < 1 + lim - band) return true;
    const auto pk = detail::max_excess_hp(s, sum, 1 + lim - band);
    return pk.excess <= limit;
  }
  bool both(const QOp& t, const QDir& d, q128 eps) const {
    return contraction(with_dir(t, d, eps)) && contraction(with_dir(t, d, -eps));
  }
};

}  // namespace

const char* oracle_name(OracleVerdict::Kind k) {
  return k == OracleVerdict::NotExtreme ? "NotExtreme" : "ConsistentWithExtreme";
}

bool midpoint_check(const Operator2x2& t, const Operator2x2& a, const Operator2x2& b, double tol) {
  if (max_abs_diff(a, b) <= tol) return false;
  const Operator2x2 mid = 0.5 * (a + b);
  if (max_abs_diff(mid, t) > tol) return false;
  return is_contraction(a, tol) && is_contraction(b, tol);
}

OracleVerdict extremality_probe(const Operator2x2& t, const OracleOptions& opt) {
  if (opt.n_directions < 0) throw DomainError("extremality_probe: n_directions < 0");
  if (!(opt.eps_min > 0 && opt.eps_min <= 1)) throw DomainError("extremality_probe: eps_min in (0, 1]");
  const NormCertificate cert = op_norm(t);
  if (std::fabs(cert.norm - 1.0) > 1e-8) throw DomainError("extremality_probe: ‖T‖ != 1");

  NormOptions inner;
  inner.exec = Exec::Serial;
  const QOp tq = detail::to_quad(t);
  const auto st = detail::scan_and_refine(t, inner, std::numeric_limits<double>::infinity());
  Judge judge{inner, detail::max_excess_hp(tq, st, 0.0).excess + q128(opt.tol_oracle)};

  std::vector<QDir> dirs;
  dirs.reserve(9 + opt.n_directions);
  dirs.push_back(segment_direction(tq, detail::polish_maximizer_q(tq, cert.angles.front(), 1e-4)));
  for (int k = 0; k < 4; ++k) {
    for (int sgn : {1, -1}) {
      q128 e[4] = {0, 0, 0, 0};
      e[k] = sgn;
      dirs.push_back(unit_dir(e[0], e[1], e[2], e[3]));
    }
  }
  Stream rng(opt.seed);
  for (int i = 0; i < opt.n_directions; ++i) {
    const double a = rng.normal(), b = rng.normal(), c = rng.normal(), d = rng.normal();
    dirs.push_back(unit_dir(a, b, c, d));
  }

  const q128 eps0 = opt.eps_min;
  const long hit = kernels::first_true(
      static_cast<long>(dirs.size()), [&](long i) { return judge.both(tq, dirs[i], eps0); },
      opt.exec);

  OracleVerdict out;
  out.directions_scanned = static_cast<int>(hit < 0 ? dirs.size() : hit + 1);
  if (hit < 0) return out;

  const QDir& d = dirs[hit];
  q128 lo = eps0, hi = 1;
  if (judge.both(tq, d, hi)) {
    lo = hi;
  } else {
    for (int it = 0; it < opt.bisect_iterations; ++it) {
      const q128 m = (lo + hi) / 2;
      if (judge.both(tq, d, m)) lo = m; else hi = m;
    }
  }
  out.verdict = OracleVerdict::NotExtreme;
  out.direction_index = hit;
  out.epsilon = static_cast<double>(lo);
  Operator2x2 w = t;
  w.a11 = static_cast<double>(d.d[0]);
  w.a12 = static_cast<double>(d.d[1]);
  w.a21 = static_cast<double>(d.d[2]);
  w.a22 = static_cast<double>(d.d[3]);
  out.witness = w;

  const Operator2x2 plus = detail::to_double(with_dir(tq, d, lo));
  const Operator2x2 minus = detail::to_double(with_dir(tq, d, -lo));
  auto retag = [&](Operator2x2 m) {
    m.domain = t.domain;
    m.codomain = t.codomain;
    return m;
  };
  if (!midpoint_check(t, retag(plus), retag(minus), 1e-9))
    throw InconsistencyError("extremality_probe: witness fails the midpoint check");
  return out;
}

}  // namespace clab
