#pragma once

// Quad-precision helpers shared by opnorm and the oracle. Not installed.

#include <vector>

#include "clab/operator.hpp"
#include "clab/opnorm.hpp"

namespace clab::detail {

using q128 = __float128;

struct QOp {
  q128 a11, a12, a21, a22;
  double p, q;
};

QOp to_quad(const Operator2x2& t);
Operator2x2 to_double(const QOp& t);
QOp qop_add(const QOp& a, const QOp& b, q128 scale_b);

struct HpPeak {
  q128 theta;
  q128 excess;  // ‖T v(theta)‖_q^q - 1
};

// ‖T v(theta)‖_q^q - 1
q128 excess_q(const QOp& t, q128 theta);

// Golden-section maximization of ‖T v(theta)‖_q^q over [a, b] in quad.
HpPeak refine_peak_hp(const QOp& t, q128 a, q128 b);

// Result of the double-precision scan plus refinement that everything else
// builds on. cand_theta holds the sampled local maxima (best first) and
// cand_g the refined values ‖T v‖_q^q there.
struct ScanSummary {
  bool exceeded = false;  // early exit: a sample went above the threshold
  double h = 0;           // half-width of the bracket around each candidate
  std::vector<double> cand_theta;
  std::vector<double> cand_g;
  double best_g = 0;
};

ScanSummary scan_and_refine(const Operator2x2& t, const NormOptions& opt, double exit_above);

// Largest quad excess over the candidates whose double value is >= g_floor.
HpPeak max_excess_hp(const QOp& t, const ScanSummary& s, double g_floor);

// Maximizer angle within [theta - h, theta + h] to quad accuracy: golden
// section, then bisection on a sign change of the stationarity function.
// Flat (high-order) maxima defeat double precision; this does not.
q128 polish_maximizer_q(const QOp& t, double theta, double h);

// Unit vector v(theta) of l^p and its duality image, in quad.
void sphere_point_q(q128 theta, double p, q128& v1, q128& v2);
q128 spow_q(q128 v, q128 e);

}  // namespace clab::detail
