#pragma once

#include <vector>

#include "clab/kernels.hpp"
#include "clab/operator.hpp"

namespace clab {

struct NormOptions {
  int scan_points = 4096;
  double tol_attain = 1e-9;
  double merge_angle = 1e-7;
  double independence_det = 1e-8;
  Exec exec = default_exec();
};

struct NormCertificate {
  double norm = 0.0;
  // Unit maximizers, first nonzero coordinate positive, best value first.
  std::vector<LpVector> maximizers;
  std::vector<double> angles;  // sphere parameter of each maximizer, in [0, pi)
  bool independent_pair = false;
};

// v(theta) on the unit sphere of l^p; exactly unit for every theta.
LpVector sphere_point(double theta, Exponent p);

NormCertificate op_norm(const Operator2x2& t, const NormOptions& opt = {});

// ‖T‖ <= 1 + tol. For tol below 1e-12 the decision near 1 is made with
// quad-precision refinement of the candidate maxima, since double rounding
// alone cannot resolve such tolerances.
bool is_contraction(const Operator2x2& t, double tol, const NormOptions& opt = {});

// The largest value of ‖Tv‖_q^q - 1 found near the sampled maxima, evaluated
// in quad precision. Intended for operators of norm close to 1.
double norm_excess_hp(const Operator2x2& t, const NormOptions& opt = {});

bool is_isometry(const Operator2x2& t, int samples = 64, double tol = 1e-9);

LpVector canonical_sign(const LpVector& v);

}  // namespace clab
