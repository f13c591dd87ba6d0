#include "clab/inequality.hpp"

#include <algorithm>
#include <cmath>

namespace clab {

namespace {

double apow(double v, double e) { return std::pow(std::fabs(v), e); }

Margin make_margin(double lhs, double rhs, std::vector<std::pair<std::string, double>> params) {
  return {lhs, rhs, rhs - lhs, std::move(params)};
}

void require_positive(const LpVector& v, const char* what) {
  if (!(v.x1 > 0 && v.x2 > 0)) throw DomainError(std::string(what) + ": coordinates must be > 0");
  if (!v.is_unit(1e-10)) throw DomainError(std::string(what) + ": not a unit vector");
}

double rel(double a, double b) {
  return std::fabs(a - b) / std::max({1e-300, std::fabs(a), std::fabs(b)});
}

}  // namespace

Margin lemma1_margin(Exponent p, Exponent q, double r) {
  const double pv = p.value(), qv = q.value();
  if (pv > qv + kExponentEqTol) throw DomainError("lemma1_margin: needs p <= q");
  const double a = std::sqrt((pv - 1) / (qv - 1));
  const double lhs = std::pow(0.5 * (apow(1 + a * r, qv) + apow(1 - a * r, qv)), 1 / qv);
  const double rhs = std::pow(0.5 * (apow(1 + r, pv) + apow(1 - r, pv)), 1 / pv);
  return make_margin(lhs, rhs, {{"p", pv}, {"q", qv}, {"r", r}});
}

Margin e18_margin(Exponent p, Exponent q, const LpVector& x, const LpVector& y, Sign sign,
                  double r) {
  require_positive(x, "e18_margin: x");
  require_positive(y, "e18_margin: y");
  const double pv = p.value(), qv = q.value();
  const double a = sign_value(sign) * std::sqrt((pv - 1) / (qv - 1));
  const double b1 = std::pow(y.x1, qv), b2 = std::pow(y.x2, qv);
  const double a1 = std::pow(x.x1, pv), a2 = std::pow(x.x2, pv);
  const double lhs = std::pow(b1 * apow(1 + a * std::pow(y.x2 / y.x1, qv / 2) * r, qv) +
                                  b2 * apow(1 - a * std::pow(y.x1 / y.x2, qv / 2) * r, qv),
                              1 / qv);
  const double rhs = std::pow(a1 * apow(1 + std::pow(x.x2 / x.x1, pv / 2) * r, pv) +
                                  a2 * apow(1 - std::pow(x.x1 / x.x2, pv / 2) * r, pv),
                              1 / pv);
  return make_margin(lhs, rhs,
                     {{"p", pv}, {"q", qv}, {"x1", x.x1}, {"y1", y.x1}, {"sign", sign_value(sign)},
                      {"r", r}});
}

LpVector solve_e12(Exponent p, Exponent q, const LpVector& x) {
  if (!(x.x1 != 0 && x.x2 != 0)) throw DomainError("solve_e12: needs x1 x2 != 0");
  if (!x.is_unit(1e-10)) throw DomainError("solve_e12: x is not a unit vector");
  const double pv = p.value(), qv = q.value();
  if (std::fabs(qv - 2) <= kExponentEqTol) throw DomainError("solve_e12: singular at q = 2");
  const double a1 = apow(x.x1, pv), a2 = apow(x.x2, pv);
  // 1/(a1 a2) - 4 = (a1 - a2)^2 / (a1 a2) when a1 + a2 = 1; no cancellation
  // near the symmetric point.
  const double dx = (a1 - a2) * (a1 - a2) / (a1 * a2);
  const double k = (pv - 2) * (pv - 2) * (qv - 1) / ((pv - 1) * (qv - 2) * (qv - 2));
  const double dy = k * dx;
  if (!std::isfinite(dy)) throw DomainError("solve_e12: no finite solution");
  const double d = dy == 0 ? 0.0 : 1.0 / std::sqrt(1.0 + 4.0 / dy);
  const double big = 0.5 * (1 + d);
  const double small = (1.0 / (4.0 + dy)) / big;
  const double y_big = std::pow(big, 1 / qv), y_small = std::pow(small, 1 / qv);
  if (std::fabs(x.x1) >= std::fabs(x.x2)) return {y_big, y_small, q};
  return {y_small, y_big, q};
}

double e12_residual(Exponent p, Exponent q, const LpVector& x, const LpVector& y) {
  const double pv = p.value(), qv = q.value();
  const double lhs = (qv - 2) * (qv - 2) / (qv - 1) * (1 / apow(y.x1 * y.x2, qv) - 4);
  const double rhs = (pv - 2) * (pv - 2) / (pv - 1) * (1 / apow(x.x1 * x.x2, pv) - 4);
  return std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

Margin lemma3_margin(Exponent p, Exponent q, double x1p, double r) {
  const double pv = p.value(), qv = q.value();
  if (!(pv > 1 && pv < qv && qv < 2)) throw DomainError("lemma3_margin: needs 1 < p < q < 2");
  if (!(x1p >= 0.5 && x1p <= 1 / qv + 1e-15)) {
    throw DomainError("lemma3_margin: needs 1/2 <= x1^p <= 1/q");
  }
  const LpVector x = unit_from_power(x1p, p);
  const LpVector y = solve_e12(p, q, x);
  const double u = (1 - x1p) / x1p;
  const double b1 = std::pow(y.x1, qv);
  const double v = std::pow(y.x2, qv) / b1;
  const double a = std::sqrt((pv - 1) / (qv - 1));
  const double lhs = std::pow(apow(1 + a * std::sqrt(v) * r, qv) / (1 + v) +
                                  v / (1 + v) * apow(1 - a / std::sqrt(v) * r, qv),
                              1 / qv);
  const double rhs = std::pow(apow(1 + std::sqrt(u) * r, pv) / (1 + u) +
                                  u / (1 + u) * apow(1 - r / std::sqrt(u), pv),
                              1 / pv);
  return make_margin(lhs, rhs, {{"p", pv}, {"q", qv}, {"x1p", x1p}, {"r", r}});
}

Margin corollary_margin(Exponent p, Exponent q, double t) {
  const double pv = p.value(), qv = q.value();
  if (!(pv < qv && qv <= 2 + kExponentEqTol)) throw DomainError("corollary_margin: needs 1 < p < q <= 2");
  const double lhs =
      std::pow(apow(1 + (pv - 1) * t, qv) / pv + (pv - 1) / pv * apow(1 - t, qv), 1 / qv);
  const double rhs =
      std::pow(apow(1 + (qv - 1) * t, pv) / qv + (qv - 1) / qv * apow(1 - t, pv), 1 / pv);
  return make_margin(lhs, rhs, {{"p", pv}, {"q", qv}, {"t", t}});
}

Interval e16_e17_bounds(Exponent p, Exponent q) {
  const double pv = p.value(), qv = q.value();
  const bool two_p = p.is_two(), two_q = q.is_two();
  if (two_p || two_q || p.approx_equal(q)) throw DomainError("e16_e17_bounds: region mismatch");
  const bool lower = (pv < qv && qv < 2) || (2 < pv && pv < qv);  // b, c
  const bool upper = (qv < pv && pv < 2) || (2 < qv && qv < pv);  // e, f
  if (!lower && !upper) throw DomainError("e16_e17_bounds: region mismatch");
  const double rad = (qv - 2) * (pv * qv - pv - qv + 2) / (qv * (pv * qv - pv - qv));
  const double edge = 0.5 * (1 + std::sqrt(std::max(rad, 0.0)));
  if (lower) return {0.5, edge, false};
  return {edge, 1.0, true};
}

SubstitutionFrame substitution_frame(Exponent p, Exponent q, const LpVector& x, const LpVector& y,
                                     Sign sign) {
  const double pv = p.value(), qv = q.value();
  if (!(pv < qv && qv < 2)) throw DomainError("substitution_frame: needs 1 < p < q < 2");
  require_positive(x, "substitution_frame: x");
  require_positive(y, "substitution_frame: y");
  SubstitutionFrame f;
  f.a1 = std::pow(x.x1, pv);
  f.a2 = std::pow(x.x2, pv);
  f.b1 = std::pow(y.x1, qv);
  f.b2 = std::pow(y.x2, qv);
  if (f.a1 < f.a2) throw DomainError("substitution_frame: needs x1^p >= x2^p");
  f.u = f.a2 / f.a1;
  f.v = f.b2 / f.b1;
  f.alpha = sign_value(sign) * std::sqrt((pv - 1) / (qv - 1));
  f.c = f.alpha * std::sqrt(f.u * f.v);
  const double u = f.u, v = f.v, c = f.c;
  f.A = (u * v + c) * (u - c);
  f.B = (u * v + c) * (1 + c) + (v - c) * (u - c);
  f.D = (1 + c) * (v - c);
  const double l19 = (2 - qv) * f.alpha / std::sqrt(v) * (1 - v);
  const double r19 = (2 - pv) / std::sqrt(u) * (1 - u);
  f.e19_residual = std::fabs(l19 - r19) / std::max({1.0, std::fabs(l19), std::fabs(r19)});
  if (f.e19_residual > 1e-10) {
    throw InconsistencyError("substitution_frame: (x, y) do not satisfy the y-equation");
  }
  f.identity1_residual = rel(f.A + f.D + f.B, v * (1 + u) * (1 + u));
  f.identity2_residual = rel(f.A + u * u * f.D - u * f.B, -c * c * (1 + u) * (1 + u));
  f.e20_lhs = f.alpha / std::sqrt(v) <= 1 / std::sqrt(u);
  f.e20_rhs = f.a1 <= 1 / qv;
  return f;
}

std::vector<double> margin_grid(double r_max, int points, int tail_points) {
  if (points < 2 || !(r_max > 0)) throw DomainError("margin_grid: bad grid");
  std::vector<double> g;
  g.reserve(points + 2 * tail_points);
  const double lmax = 6.0, lmin = std::log10(r_max);
  for (int k = tail_points; k >= 1 && lmin < lmax; --k)
    g.push_back(-std::pow(10.0, lmin + (lmax - lmin) * k / tail_points));
  for (int i = 0; i < points; ++i) g.push_back(-r_max + 2 * r_max * i / (points - 1));
  for (int k = 1; k <= tail_points && lmin < lmax; ++k)
    g.push_back(std::pow(10.0, lmin + (lmax - lmin) * k / tail_points));
  return g;
}

}  // namespace clab
