#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace clab {

// Thrown on any precondition violation (bad exponent, non-unit vector, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when two internal computations disagree beyond their tolerances.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kExponentMin = 1.05;
inline constexpr double kExponentMax = 64.0;
// p == 2, q == 2, p == q are decided with this tolerance everywhere.
inline constexpr double kExponentEqTol = 1e-12;

class Exponent {
 public:
  // User-facing construction, restricted to [kExponentMin, kExponentMax].
  explicit Exponent(double value);

  // Any value in (1, inf); used for conjugates, which leave the user range
  // near the ends (the conjugate of 64 is about 1.016).
  static Exponent unrestricted(double value);

  double value() const { return value_; }
  double conjugate_value() const { return value_ / (value_ - 1.0); }
  Exponent conjugate() const { return unrestricted(conjugate_value()); }

  bool is_two() const { return std::fabs(value_ - 2.0) <= kExponentEqTol; }
  bool approx_equal(const Exponent& o) const {
    return std::fabs(value_ - o.value_) <= kExponentEqTol;
  }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.value_ == b.value_; }

 private:
  struct Raw {};
  Exponent(double value, Raw) : value_(value) {}
  double value_;
};

// Real number or a signed infinity. Used for r = infinity on the curves and
// for the liminf values s** which can diverge.
class ExtReal {
 public:
  ExtReal() = default;
  static ExtReal finite(double v);
  static ExtReal pos_inf() { return ExtReal(Kind::PosInf, 0.0); }
  static ExtReal neg_inf() { return ExtReal(Kind::NegInf, 0.0); }

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  // Finite value; throws for infinities.
  double value() const;
  // IEEE view for ordering comparisons.
  double as_double() const;
  std::string to_string() const;

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && a.v_ == b.v_;
  }

 private:
  enum class Kind { Finite, PosInf, NegInf };
  ExtReal(Kind k, double v) : kind_(k), v_(v) {}
  Kind kind_ = Kind::Finite;
  double v_ = 0.0;
};

enum class Sign { Plus, Minus };

inline double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }
inline const char* sign_name(Sign s) { return s == Sign::Plus ? "+" : "-"; }

}  // namespace clab
