#pragma once

#include <optional>
#include <string>

#include "clab/opnorm.hpp"
#include "clab/segment.hpp"

namespace clab {

enum class Verdict { ExtremeTypeA, ExtremeTypeB, ExtremeIsometry, NotExtreme, Unknown };
enum class Region { I, II, III, IV, V, OpenB, OpenC, OpenD, OpenE, OpenF };

const char* verdict_name(Verdict v);
const char* region_name(Region r);
bool is_open(Region r);
bool is_extreme(Verdict v);

// Exact case split on (p, q); p = 2, q = 2 and p = q use kExponentEqTol.
Region region_of(Exponent p, Exponent q);

// original = left * op * right, with left and right signed permutations.
struct CanonicalForm {
  Operator2x2 op;
  Operator2x2 left, right;
  LpVector x, y;  // principal maximizer of op and its normalized image
  NormCertificate norm;
};

// Requires op_norm(T) = 1 within tol_norm.
CanonicalForm canonicalize(const Operator2x2& t, const NormOptions& opt = {}, double tol_norm = 1e-8);

// T = (A + B) / 2 with A != B, both contractions.
struct MidpointCertificate {
  Operator2x2 a, b;
  double delta = 0;
};

struct Classification {
  Verdict verdict = Verdict::Unknown;
  Region region = Region::I;
  std::string detail;
  std::optional<LpVector> x, y;  // norm-attaining pair in the original coordinates
  std::optional<double> s;       // segment parameter at the canonical pair
  std::optional<double> s_star_plus, s_star_minus;
  std::optional<MidpointCertificate> certificate;
  bool independent_pair = false;
};

struct ClassifyOptions {
  NormOptions norm;
  SegmentOptions segment;
  double tol_norm = 1e-8;
  double match_tol = 1e-7;
  double cert_tol = 1e-8;
  double interior_gap = 1e-6;
  // Compute s*± even when the verdict does not need them (for reports).
  bool always_segment = false;
};

Classification classify(const Operator2x2& t, const ClassifyOptions& opt = {});

// T_{s*} at (x, y): an endpoint of the segment, hence extreme.
Operator2x2 generate_extreme(const LpVector& x, const LpVector& y, Sign sign,
                             const SegmentOptions& opt = {});

}  // namespace clab
