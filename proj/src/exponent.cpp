#include "clab/exponent.hpp"

#include <cstdio>
#include <limits>

namespace clab {

Exponent::Exponent(double value) : value_(value) {
  if (!(value >= kExponentMin && value <= kExponentMax)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "exponent %.17g outside [%g, %g]", value, kExponentMin,
                  kExponentMax);
    throw DomainError(buf);
  }
}

Exponent Exponent::unrestricted(double value) {
  if (!(value > 1.0) || !std::isfinite(value)) {
    throw DomainError("exponent must lie in (1, inf)");
  }
  return Exponent(value, Raw{});
}

ExtReal ExtReal::finite(double v) {
  if (!std::isfinite(v)) throw DomainError("ExtReal::finite given a non-finite value");
  return ExtReal(Kind::Finite, v);
}

double ExtReal::value() const {
  if (kind_ != Kind::Finite) throw DomainError("ExtReal::value on an infinite value");
  return v_;
}

double ExtReal::as_double() const {
  switch (kind_) {
    case Kind::PosInf: return std::numeric_limits<double>::infinity();
    case Kind::NegInf: return -std::numeric_limits<double>::infinity();
    default: return v_;
  }
}

std::string ExtReal::to_string() const {
  if (kind_ == Kind::PosInf) return "inf";
  if (kind_ == Kind::NegInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v_);
  return buf;
}

}  // namespace clab
