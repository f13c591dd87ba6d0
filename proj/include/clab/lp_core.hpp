#pragma once

#include <array>

#include "clab/exponent.hpp"

namespace clab {

struct LpVector {
  double x1 = 0.0;
  double x2 = 0.0;
  Exponent exponent{2.0};

  LpVector() = default;
  LpVector(double a, double b, Exponent e) : x1(a), x2(b), exponent(e) {}

  double norm() const;
  bool is_unit(double tol = 1e-12) const;
};

struct TaylorCoeffs {
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4 = 0;
};

// sgn(v) |v|^e with sgn(0) = 0.
double signed_pow(double v, double e);

double norm_p(double a, double b, double p);

// The unit vector (x1, x2) with x1 >= 0 given x1, solving for x2 >= 0.
LpVector unit_from_first(double x1, Exponent p);
// The unit vector with |x1|^p = a1, both coordinates >= 0.
LpVector unit_from_power(double a1, Exponent p);

// x^{p-1}, tagged with the conjugate exponent. Requires |‖x‖_p - 1| <= 1e-10.
LpVector duality_map(const LpVector& x);
LpVector rotate(const LpVector& x);
// f_p(x, r) = x + r (x^o)^{p-1}; r = inf gives (x^o)^{p-1}.
LpVector curve_f(const LpVector& x, const ExtReal& r);

// F_p(x, r), the direct formula.
double big_f(const LpVector& x, double r);
// F_p(x, r) - 1 without cancellation for small r (x must be unit).
double big_f_excess(const LpVector& x, double r);
// d/dr F_p(x, r).
double big_f_deriv(const LpVector& x, double r);
// H_pq(x, r) = F_p(x, r)^{q/p}.
double big_h(const LpVector& x, double r, Exponent q);
double big_h_excess(const LpVector& x, double r, Exponent q);

// |1 + t|^p - 1 - p t, accurate for small t, and its derivative in t.
double pow1p_excess(double t, double p);
double pow1p_excess_deriv(double t, double p);
// d/dr of big_f_excess, with the same small-r accuracy.
double big_f_excess_deriv(const LpVector& x, double r);

TaylorCoeffs taylor_F(const LpVector& x);
TaylorCoeffs taylor_H(const LpVector& x, Exponent q);

double dot(const LpVector& a, const LpVector& b);

}  // namespace clab
