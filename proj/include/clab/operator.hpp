#pragma once

#include <array>

#include "clab/lp_core.hpp"

namespace clab {

// A 2x2 real matrix viewed as a map l^p_2 -> l^q_2.
struct Operator2x2 {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
  Exponent domain{2.0};
  Exponent codomain{2.0};

  Operator2x2() = default;
  Operator2x2(double m11, double m12, double m21, double m22, Exponent p, Exponent q)
      : a11(m11), a12(m12), a21(m21), a22(m22), domain(p), codomain(q) {}

  static Operator2x2 identity(Exponent p, Exponent q) { return {1, 0, 0, 1, p, q}; }
  std::array<double, 4> entries() const { return {a11, a12, a21, a22}; }
};

LpVector apply(const Operator2x2& t, const LpVector& v);
Operator2x2 adjoint(const Operator2x2& t);

// (a ⊗ b) v = <a, v> b, as a map p -> q.
Operator2x2 tensor(const LpVector& a, const LpVector& b, Exponent p, Exponent q);

Operator2x2 operator+(const Operator2x2& a, const Operator2x2& b);
Operator2x2 operator-(const Operator2x2& a, const Operator2x2& b);
Operator2x2 operator*(double c, const Operator2x2& a);
// Plain matrix product a*b, with domain of b and codomain of a.
Operator2x2 compose(const Operator2x2& a, const Operator2x2& b);

double frobenius(const Operator2x2& t);
double max_abs_diff(const Operator2x2& a, const Operator2x2& b);

}  // namespace clab
