#pragma once

#include <string>
#include <utility>
#include <vector>

#include "clab/kernels.hpp"
#include "clab/lp_core.hpp"

namespace clab {

struct Margin {
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // rhs - lhs
  std::vector<std::pair<std::string, double>> params;
};

// [(|1+a r|^q + |1-a r|^q)/2]^{1/q} <= [(|1+r|^p + |1-r|^p)/2]^{1/p},
// a = sqrt((p-1)/(q-1)). Requires p <= q.
Margin lemma1_margin(Exponent p, Exponent q, double r);

// Contraction test for T at s** along the curve parameter r. x, y unit with
// all coordinates positive.
Margin e18_margin(Exponent p, Exponent q, const LpVector& x, const LpVector& y, Sign sign,
                  double r);

// y with y1 >= y2 > 0 when x1 >= x2 (mirrored otherwise) satisfying
// (q-2)^2/(q-1) [1/(y1y2)^q - 4] = (p-2)^2/(p-1) [1/(x1x2)^p - 4].
LpVector solve_e12(Exponent p, Exponent q, const LpVector& x);
// Relative residual of the relation above.
double e12_residual(Exponent p, Exponent q, const LpVector& x, const LpVector& y);

// 1 < p < q < 2, 1/2 < x1p <= 1/q. x1p = 1/2 is accepted as the boundary case.
Margin lemma3_margin(Exponent p, Exponent q, double x1p, double r);

// 1 < p < q <= 2.
Margin corollary_margin(Exponent p, Exponent q, double t);

struct Interval {
  double lo = 0, hi = 0;
  bool hi_open = false;
};

// Range of x1^p allowed by the fourth-order condition: [1/2, (1+R)/2] for
// 1 < p < q < 2 and 2 < p < q, [(1+R)/2, 1) for 1 < q < p < 2 and 2 < q < p.
Interval e16_e17_bounds(Exponent p, Exponent q);

struct SubstitutionFrame {
  double a1 = 0, a2 = 0, b1 = 0, b2 = 0;
  double u = 0, v = 0;
  double alpha = 0;
  double c = 0;
  double A = 0, B = 0, D = 0;
  double e19_residual = 0;
  double identity1_residual = 0;  // A + D + B vs v(1+u)^2, relative
  double identity2_residual = 0;  // A + u^2 D - u B vs -c^2(1+u)^2, relative
  bool e20_lhs = false;           // alpha v^{-1/2} <= u^{-1/2}
  bool e20_rhs = false;           // a1 <= 1/q
};

SubstitutionFrame substitution_frame(Exponent p, Exponent q, const LpVector& x, const LpVector& y,
                                     Sign sign);

// Minimum of margin_fn over a grid, ties to the lowest index.
struct SweepResult {
  std::vector<double> params;
  std::vector<double> margins;
  double min_margin = 0;
  double argmin = 0;
};

// 2001 points over [-r_max, r_max] plus log-spaced tails out to 1e6.
std::vector<double> margin_grid(double r_max = 100.0, int points = 2001, int tail_points = 64);

template <class F>
SweepResult sweep(const std::vector<double>& grid, F&& margin_fn, Exec ex = default_exec()) {
  SweepResult out;
  out.params = grid;
  out.margins.resize(grid.size());
  kernels::map_index(
      static_cast<long>(grid.size()), [&](long i) { return margin_fn(grid[i]); },
      out.margins.data(), ex);
  const auto m = kernels::argmin(out.margins.data(), static_cast<long>(grid.size()), ex);
  out.min_margin = m.value;
  out.argmin = m.index >= 0 ? grid[m.index] : 0.0;
  return out;
}

}  // namespace clab
