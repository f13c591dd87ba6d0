#include "clab/segment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "clab/optimize.hpp"

namespace clab {

namespace {

void require_unit(const LpVector& v, const char* what) {
  if (!v.is_unit(1e-10)) throw DomainError(std::string(what) + " is not a unit vector");
}

// (v^o)^{e-1} for the exponent of v.
LpVector rotated_dual(const LpVector& v) {
  const double e = v.exponent.value() - 1.0;
  return {-signed_pow(v.x2, e), signed_pow(v.x1, e), v.exponent};
}

// Solve E_q(y, w) = target for w = sigma * m, m > 0.
double solve_excess(const LpVector& y, double sigma, double target, double m0) {
  auto phi = [&](double m) { return big_f_excess(y, sigma * m) - target; };
  auto dphi = [&](double m) { return sigma * big_f_excess_deriv(y, sigma * m); };
  if (!(m0 > 0) || !std::isfinite(m0)) m0 = 1.0;
  double lo = 0.0, hi = m0;
  double fhi = phi(hi);
  if (fhi < 0) {
    for (int k = 0; k < 4000 && fhi < 0; ++k) {
      lo = hi;
      hi *= 2.0;
      fhi = phi(hi);
    }
  } else {
    for (int k = 0; k < 4000; ++k) {
      const double m = hi * 0.5;
      if (m < 1e-300) break;
      if (phi(m) >= 0) {
        hi = m;
      } else {
        lo = m;
        break;
      }
    }
  }
  // Safeguarded Newton inside [lo, hi].
  double m = std::clamp(m0, lo, hi);
  if (m == lo && lo == 0.0) m = 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    const double f = phi(m);
    if (f == 0.0) return m;
    if (f < 0) lo = m; else hi = m;
    const double d = dphi(m);
    double next = (d > 0) ? m - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - m) <= 2e-16 * std::fabs(m) || hi - lo <= 4e-16 * hi) return next;
    m = next;
  }
  return m;
}

double abs_s_at_r(const LpVector& x, const LpVector& y, double r, Sign sign, double guess_abs_s) {
  const double p = x.exponent.value(), q = y.exponent.value();
  const double target = std::expm1(q / p * std::log1p(big_f_excess(x, r)));
  const double sigma = (r > 0 ? 1.0 : -1.0) * sign_value(sign);
  const double m = solve_excess(y, sigma, target, guess_abs_s * std::fabs(r));
  return m / std::fabs(r);
}

double abs_s_at_inf(const LpVector& x, const LpVector& y) {
  const LpVector a = rotated_dual(x);
  const LpVector b = rotated_dual(y);
  return a.norm() / b.norm();
}

}  // namespace

Operator2x2 build_ts(const LpVector& x, const LpVector& y, double s) {
  require_unit(x, "build_ts: x");
  require_unit(y, "build_ts: y");
  const LpVector xd = duality_map(x);
  const LpVector xo = rotate(x);
  const LpVector yod = rotated_dual(y);
  const Exponent p = x.exponent, q = y.exponent;
  return tensor(xd, y, p, q) + s * tensor(xo, yod, p, q);
}

double s_at_r(const LpVector& x, const LpVector& y, const ExtReal& r, Sign sign) {
  require_unit(x, "s_at_r: x");
  require_unit(y, "s_at_r: y");
  if (!r.is_finite()) return sign_value(sign) * abs_s_at_inf(x, y);
  if (r.value() == 0.0) throw DomainError("s_at_r: r = 0 has no root");
  return sign_value(sign) * abs_s_at_r(x, y, r.value(), sign, 1.0);
}

double s_at_r_from(const LpVector& x, const LpVector& y, double r, Sign sign, double guess) {
  if (r == 0.0) throw DomainError("s_at_r: r = 0 has no root");
  return sign_value(sign) * abs_s_at_r(x, y, r, sign, std::fabs(guess));
}

ExtReal s_star_star(const LpVector& x, const LpVector& y, Sign sign) {
  const double p = x.exponent.value(), q = y.exponent.value();
  const double a = std::fabs(x.x1 * x.x2), b = std::fabs(y.x1 * y.x2);
  // Leading behaviour of the two sides of F_q(y, rs) = F_p(x, r)^{q/p} at
  // r = 0: F - 1 ~ alpha |r|^k with k = 2 in the generic case.
  double kx = 2, ax = 1, ky = 2, ay = 1;
  if (x.exponent.is_two() || a == 0.0) kx = p;
  else ax = p * (p - 1) / 2 * std::pow(a, p - 2);
  if (y.exponent.is_two() || b == 0.0) ky = q;
  else ay = q * (q - 1) / 2 * std::pow(b, q - 2);
  const double sg = sign_value(sign);
  if (std::fabs(kx - ky) <= kExponentEqTol) {
    return ExtReal::finite(sg * std::pow(q / p * ax / ay, 1.0 / ky));
  }
  if (kx > ky) return ExtReal::finite(sg * 0.0);
  return sign == Sign::Plus ? ExtReal::pos_inf() : ExtReal::neg_inf();
}

ExtReal s_star_star_numeric(const LpVector& x, const LpVector& y, Sign sign) {
  double best = std::numeric_limits<double>::infinity();
  for (double side : {1.0, -1.0}) {
    std::vector<double> m(41, 0.0);
    double guess = 1.0;
    for (int k = 10; k <= 40; ++k) {
      m[k] = abs_s_at_r(x, y, side * std::ldexp(1.0, -k), sign, guess);
      guess = m[k];
    }
    const double slope = (std::log(m[40]) - std::log(m[30])) / (-10.0 * std::log(2.0));
    double lim;
    if (slope > 0.05 || m[40] == 0.0) lim = 0.0;
    else if (slope < -0.05) lim = std::numeric_limits<double>::infinity();
    else lim = std::max(0.0, 2.0 * m[40] - m[39]);
    best = std::min(best, lim);
  }
  if (std::isinf(best)) return sign == Sign::Plus ? ExtReal::pos_inf() : ExtReal::neg_inf();
  return ExtReal::finite(sign_value(sign) * best);
}

bool s_star_star_agree(const ExtReal& closed, const ExtReal& numeric) {
  if (!closed.is_finite() || !numeric.is_finite()) return closed == numeric;
  const double a = closed.value(), b = numeric.value();
  return std::fabs(a - b) <= 1e-4 * std::max(1.0, std::fabs(a));
}

SStar s_star(const LpVector& x, const LpVector& y, Sign sign, const SegmentOptions& opt) {
  require_unit(x, "s_star: x");
  require_unit(y, "s_star: y");
  const double lmin = std::log10(opt.r_min), lmax = std::log10(opt.r_max);
  const long n = std::lround((lmax - lmin) * opt.per_decade) + 1;
  auto log_at = [&](long j) { return lmin + (lmax - lmin) * j / (n - 1); };

  // vals[2j] at r = +10^l_j, vals[2j+1] at r = -10^l_j, so the lexicographic
  // argmin breaks ties toward smaller |r| and then toward r > 0.
  // Continuation runs inside fixed chunks: results do not depend on threads.
  constexpr long kChunk = 64;
  const long chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> vals(2 * n);
  auto run_chunk = [&](long c) {
    for (int side = 0; side < 2; ++side) {
      double guess = 1.0;
      for (long j = c * kChunk; j < std::min(n, (c + 1) * kChunk); ++j) {
        const double r = (side == 0 ? 1.0 : -1.0) * std::pow(10.0, log_at(j));
        guess = abs_s_at_r(x, y, r, sign, guess);
        vals[2 * j + side] = guess;
      }
    }
  };
  if (opt.exec == Exec::Serial) {
    for (long c = 0; c < chunks; ++c) run_chunk(c);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long c = 0; c < chunks; ++c) run_chunk(c);
  }
  vals.push_back(abs_s_at_inf(x, y));

  const auto best = kernels::argmin(vals.data(), static_cast<long>(vals.size()), opt.exec);
  double vmin = best.value;
  std::optional<ExtReal> witness;
  const bool at_inf = best.index == 2 * n;
  if (at_inf) {
    witness = ExtReal::pos_inf();
  } else {
    const long j = best.index / 2;
    const double side = (best.index % 2 == 0) ? 1.0 : -1.0;
    witness = ExtReal::finite(side * std::pow(10.0, log_at(j)));
    if (j > 0) {
      const double a = log_at(j - 1), b = log_at(std::min(j + 1, n - 1));
      auto f = [&](double l) { return abs_s_at_r(x, y, side * std::pow(10.0, l), sign, vmin); };
      const ArgValue g = golden_min(f, a, b, 1e-10);
      if (g.value < vmin) {
        vmin = g.value;
        witness = ExtReal::finite(side * std::pow(10.0, g.arg));
      }
    }
  }

  // The infimum may only be approached as r -> 0.
  const ExtReal ss = s_star_star(x, y, sign);
  if (ss.is_finite()) {
    const double a = std::fabs(ss.value());
    const bool below = a < vmin * (1 - 1e-12);
    const bool boundary = !at_inf && best.index / 2 == 0 &&
                          std::fabs(a - vmin) <= 1e-6 * std::max(1.0, a);
    if (below || boundary) return {sign_value(sign) * a, std::nullopt};
  }
  return {sign_value(sign) * vmin, witness};
}

SegmentData segment_ixy(const LpVector& x, const LpVector& y, const SegmentOptions& opt) {
  SegmentData d;
  d.x = x;
  d.y = y;
  const SStar plus = s_star(x, y, Sign::Plus, opt);
  const SStar minus = s_star(x, y, Sign::Minus, opt);
  d.s_star_plus = plus.value;
  d.s_star_minus = minus.value;
  d.witness_plus = plus.witness;
  d.witness_minus = minus.witness;
  d.s_ss_plus = s_star_star(x, y, Sign::Plus);
  d.s_ss_minus = s_star_star(x, y, Sign::Minus);
  d.s_ss_plus_numeric = s_star_star_numeric(x, y, Sign::Plus);
  d.s_ss_minus_numeric = s_star_star_numeric(x, y, Sign::Minus);
  d.s_ss_consistent = s_star_star_agree(d.s_ss_plus, d.s_ss_plus_numeric) &&
                      s_star_star_agree(d.s_ss_minus, d.s_ss_minus_numeric);
  return d;
}

Decomposition decompose(const Operator2x2& t, const LpVector& x) {
  require_unit(x, "decompose: x");
  const Exponent p = t.domain, q = t.codomain;
  const LpVector tx = apply(t, x);
  const double ny = tx.norm();
  if (ny == 0.0) throw DomainError("decompose: T x = 0");
  // u = T (x^o)^{p-1}; T = x^{p-1} ⊗ Tx + x^o ⊗ u exactly.
  const LpVector u = apply(t, rotated_dual(x));
  const LpVector yod = rotated_dual(tx);
  // s from <u, y^o> = s <(y^o)^{q-1}, y^o> = s ‖y‖_q^q
  const LpVector yo = rotate(tx);
  const double s = dot(u, yo) / dot(yod, yo);
  const Operator2x2 recon = tensor(duality_map(x), tx, p, q) + s * tensor(rotate(x), yod, p, q);
  Decomposition d;
  d.x = x;
  d.y = {tx.x1 / ny, tx.x2 / ny, q};
  // With unit y the same s describes T/‖Tx‖ up to the norm mismatch.
  d.s = s * std::pow(ny, q.value() - 1.0) / ny;
  d.residual = max_abs_diff(t, recon);
  return d;
}

}  // namespace clab
