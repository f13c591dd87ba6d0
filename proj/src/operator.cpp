#include "clab/operator.hpp"

#include <algorithm>
#include <cmath>

namespace clab {

LpVector apply(const Operator2x2& t, const LpVector& v) {
  if (!(v.exponent == t.domain)) throw DomainError("apply: vector exponent differs from domain");
  return {t.a11 * v.x1 + t.a12 * v.x2, t.a21 * v.x1 + t.a22 * v.x2, t.codomain};
}

Operator2x2 adjoint(const Operator2x2& t) {
  return {t.a11, t.a21, t.a12, t.a22, t.codomain.conjugate(), t.domain.conjugate()};
}

Operator2x2 tensor(const LpVector& a, const LpVector& b, Exponent p, Exponent q) {
  return {b.x1 * a.x1, b.x1 * a.x2, b.x2 * a.x1, b.x2 * a.x2, p, q};
}

Operator2x2 operator+(const Operator2x2& a, const Operator2x2& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22, a.domain, a.codomain};
}

Operator2x2 operator-(const Operator2x2& a, const Operator2x2& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22, a.domain, a.codomain};
}

Operator2x2 operator*(double c, const Operator2x2& a) {
  return {c * a.a11, c * a.a12, c * a.a21, c * a.a22, a.domain, a.codomain};
}

Operator2x2 compose(const Operator2x2& a, const Operator2x2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22,
          b.domain, a.codomain};
}

double frobenius(const Operator2x2& t) {
  return std::sqrt(t.a11 * t.a11 + t.a12 * t.a12 + t.a21 * t.a21 + t.a22 * t.a22);
}

double max_abs_diff(const Operator2x2& a, const Operator2x2& b) {
  return std::max({std::fabs(a.a11 - b.a11), std::fabs(a.a12 - b.a12),
                   std::fabs(a.a21 - b.a21), std::fabs(a.a22 - b.a22)});
}

}  // namespace clab
