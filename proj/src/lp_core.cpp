#include "clab/lp_core.hpp"

#include <algorithm>
#include <cmath>

namespace clab {

double LpVector::norm() const { return norm_p(x1, x2, exponent.value()); }

bool LpVector::is_unit(double tol) const { return std::fabs(norm() - 1.0) <= tol; }

double signed_pow(double v, double e) {
  if (v == 0.0) return 0.0;
  const double m = std::pow(std::fabs(v), e);
  return v > 0 ? m : -m;
}

double norm_p(double a, double b, double p) {
  const double m = std::max(std::fabs(a), std::fabs(b));
  if (m == 0.0 || !std::isfinite(m)) return m;
  const double s = std::pow(std::fabs(a) / m, p) + std::pow(std::fabs(b) / m, p);
  return m * std::pow(s, 1.0 / p);
}

LpVector unit_from_first(double x1, Exponent p) {
  if (!(x1 >= 0.0 && x1 <= 1.0)) throw DomainError("unit_from_first: need 0 <= x1 <= 1");
  const double rest = 1.0 - std::pow(x1, p.value());
  return {x1, std::pow(std::max(rest, 0.0), 1.0 / p.value()), p};
}

LpVector unit_from_power(double a1, Exponent p) {
  if (!(a1 >= 0.0 && a1 <= 1.0)) throw DomainError("unit_from_power: need 0 <= a1 <= 1");
  const double ip = 1.0 / p.value();
  return {std::pow(a1, ip), std::pow(1.0 - a1, ip), p};
}

LpVector duality_map(const LpVector& x) {
  if (!x.is_unit(1e-10)) throw DomainError("duality_map: input is not a unit vector");
  const double e = x.exponent.value() - 1.0;
  return {signed_pow(x.x1, e), signed_pow(x.x2, e), x.exponent.conjugate()};
}

LpVector rotate(const LpVector& x) { return {-x.x2, x.x1, x.exponent}; }

LpVector curve_f(const LpVector& x, const ExtReal& r) {
  const double e = x.exponent.value() - 1.0;
  // (x^o)^{p-1} = (-sgn(x2)|x2|^{p-1}, sgn(x1)|x1|^{p-1}), kept in the domain space.
  const double d1 = -signed_pow(x.x2, e);
  const double d2 = signed_pow(x.x1, e);
  if (!r.is_finite()) return {d1, d2, x.exponent};
  const double t = r.value();
  return {x.x1 + t * d1, x.x2 + t * d2, x.exponent};
}

double big_f(const LpVector& x, double r) {
  const double p = x.exponent.value();
  const double a = x.x1 - r * signed_pow(x.x2, p - 1.0);
  const double b = x.x2 + r * signed_pow(x.x1, p - 1.0);
  return std::pow(std::fabs(a), p) + std::pow(std::fabs(b), p);
}

double pow1p_excess(double t, double p) {
  if (std::fabs(t) <= 0.5) {
    // binomial series from the quadratic term on
    double coef = p * (p - 1.0) / 2.0;
    double tk = t * t;
    double sum = 0.0;
    for (int k = 2; k < 200; ++k) {
      const double term = coef * tk;
      sum += term;
      if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
      coef *= (p - k) / (k + 1.0);
      tk *= t;
    }
    return sum;
  }
  return std::pow(std::fabs(1.0 + t), p) - 1.0 - p * t;
}

double pow1p_excess_deriv(double t, double p) {
  if (std::fabs(t) <= 0.5) {
    // sum of k C(p,k) t^{k-1} for k >= 2
    double coef = p * (p - 1.0) / 2.0;
    double tk = t;
    double sum = 0.0;
    for (int k = 2; k < 200; ++k) {
      const double term = k * coef * tk;
      sum += term;
      if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
      coef *= (p - k) / (k + 1.0);
      tk *= t;
    }
    return sum;
  }
  return p * (signed_pow(1.0 + t, p - 1.0) - 1.0);
}

namespace {

// |z|^p g(h/z): the contribution of one coordinate to F - 1 with its linear
// part removed. The linear parts of the two coordinates cancel exactly.
double coord_excess(double z, double h, double p) {
  if (h == 0.0) return 0.0;
  if (z == 0.0) return std::pow(std::fabs(h), p);
  return std::pow(std::fabs(z), p) * pow1p_excess(h / z, p);
}

}  // namespace

double big_f_excess(const LpVector& x, double r) {
  const double p = x.exponent.value();
  const double a1 = signed_pow(x.x1, p - 1.0);
  const double a2 = signed_pow(x.x2, p - 1.0);
  return coord_excess(x.x1, -r * a2, p) + coord_excess(x.x2, r * a1, p);
}

double big_f_excess_deriv(const LpVector& x, double r) {
  const double p = x.exponent.value();
  const double a1 = signed_pow(x.x1, p - 1.0);
  const double a2 = signed_pow(x.x2, p - 1.0);
  // coordinate increments are h1 = -r a2, h2 = r a1
  auto term = [p](double z, double dh, double r) {
    if (dh == 0.0) return 0.0;
    if (z == 0.0) return p * signed_pow(r * dh, p - 1.0) * dh;
    return std::pow(std::fabs(z), p) * pow1p_excess_deriv(r * dh / z, p) * dh / z;
  };
  return term(x.x1, -a2, r) + term(x.x2, a1, r);
}

double big_f_deriv(const LpVector& x, double r) {
  const double p = x.exponent.value();
  const double a1 = signed_pow(x.x1, p - 1.0);
  const double a2 = signed_pow(x.x2, p - 1.0);
  return p * (-a2 * signed_pow(x.x1 - r * a2, p - 1.0) + a1 * signed_pow(x.x2 + r * a1, p - 1.0));
}

double big_h(const LpVector& x, double r, Exponent q) {
  return std::pow(big_f(x, r), q.value() / x.exponent.value());
}

double big_h_excess(const LpVector& x, double r, Exponent q) {
  return std::expm1(q.value() / x.exponent.value() * std::log1p(big_f_excess(x, r)));
}

namespace {

void require_open_quadrant(const LpVector& x) {
  if (!(x.x1 > 0.0 && x.x2 > 0.0)) {
    throw DomainError("taylor coefficients need x1 > 0 and x2 > 0");
  }
  if (!x.is_unit(1e-10)) throw DomainError("taylor coefficients need a unit vector");
}

}  // namespace

TaylorCoeffs taylor_F(const LpVector& x) {
  require_open_quadrant(x);
  const double p = x.exponent.value();
  const double m = x.x1 * x.x2;
  const double mp = std::pow(m, p);
  const double diff = std::pow(x.x1, p) - std::pow(x.x2, p);
  TaylorCoeffs c;
  c.c0 = 1.0;
  c.c1 = 0.0;
  c.c2 = p * (p - 1) * std::pow(m, p - 2) / 2.0;
  c.c3 = p * (p - 1) * (p - 2) * std::pow(m, p - 3) * diff / 6.0;
  c.c4 = p * (p - 1) * (p - 2) * (p - 3) * std::pow(m, p - 4) * (1.0 - 3.0 * mp) / 24.0;
  return c;
}

TaylorCoeffs taylor_H(const LpVector& x, Exponent qe) {
  require_open_quadrant(x);
  const double p = x.exponent.value();
  const double q = qe.value();
  const double m = x.x1 * x.x2;
  const double mp = std::pow(m, p);
  const double diff = std::pow(x.x1, p) - std::pow(x.x2, p);
  TaylorCoeffs c;
  c.c0 = 1.0;
  c.c1 = 0.0;
  c.c2 = q * (p - 1) * std::pow(m, p - 2) / 2.0;
  c.c3 = q * (p - 1) * (p - 2) * std::pow(m, p - 3) * diff / 6.0;
  c.c4 = q * (p - 1) * std::pow(m, p - 4) *
         ((p - 2) * (p - 3) - 3.0 * mp * ((p - 2) * (p - 3) + (p - q) * (p - 1))) / 24.0;
  return c;
}

double dot(const LpVector& a, const LpVector& b) { return a.x1 * b.x1 + a.x2 * b.x2; }

}  // namespace clab
