#pragma once

#include <optional>

#include "clab/kernels.hpp"
#include "clab/operator.hpp"

namespace clab {

struct SegmentOptions {
  double r_min = 1e-6;
  double r_max = 1e6;
  int per_decade = 512;
  Exec exec = default_exec();
};

// s_star output. witness is an r != 0 (possibly infinite) achieving the
// infimum, or empty when the infimum is only approached as r -> 0.
struct SStar {
  double value = 0;
  std::optional<ExtReal> witness;
};

struct SegmentData {
  LpVector x, y;
  double s_star_plus = 0, s_star_minus = 0;
  std::optional<ExtReal> witness_plus, witness_minus;
  ExtReal s_ss_plus, s_ss_minus;                  // closed form
  ExtReal s_ss_plus_numeric, s_ss_minus_numeric;  // dyadic extrapolation
  bool s_ss_consistent = true;
};

// T = x^{p-1} ⊗ y + s x^o ⊗ (T x^o-direction), read off at a unit x.
struct Decomposition {
  LpVector x, y;  // y = Tx / ‖Tx‖_q
  double s = 0;
  double residual = 0;  // max entry of T - T_s(x, Tx)
};

Operator2x2 build_ts(const LpVector& x, const LpVector& y, double s);

double s_at_r(const LpVector& x, const LpVector& y, const ExtReal& r, Sign sign);
// Same root, with a starting guess for |s| (continuation along a grid).
double s_at_r_from(const LpVector& x, const LpVector& y, double r, Sign sign, double guess);

SStar s_star(const LpVector& x, const LpVector& y, Sign sign, const SegmentOptions& opt = {});
ExtReal s_star_star(const LpVector& x, const LpVector& y, Sign sign);
ExtReal s_star_star_numeric(const LpVector& x, const LpVector& y, Sign sign);
bool s_star_star_agree(const ExtReal& closed, const ExtReal& numeric);

SegmentData segment_ixy(const LpVector& x, const LpVector& y, const SegmentOptions& opt = {});

Decomposition decompose(const Operator2x2& t, const LpVector& x);

}  // namespace clab
