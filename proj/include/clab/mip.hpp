#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clab/classify.hpp"

namespace clab {

struct ExponentPair {
  Exponent p, q;
};

// Operators on the dual of l^p ⊗_π l^q act l^p -> l^{q'}.
ExponentPair dual_space(Exponent p, Exponent q);

enum class MipVerdict { FailsMIP, OutOfScope };
const char* mip_name(MipVerdict v);
MipVerdict mip_verdict(Exponent p, Exponent q);

struct ProbeOptions {
  int n_samples = 200;
  int net_points = 2000;
  double net_radius = 0.05;
  double gap_threshold = 1e-2;
  int family_grid = 256;
  // Fraction of sampled extremes re-checked by the oracle (0 disables).
  double verify_fraction = 0.0;
  std::uint64_t seed = 20240611;
  // r-grid density used for the net classification; points near a rank-one
  // target sit deep inside their segments.
  int net_per_decade = 64;
  Exec exec = default_exec();
};

enum class ProbeVerdict { GapEvidence, Inconclusive };
const char* probe_name(ProbeVerdict v);

struct ProbeReport {
  Exponent p{2.0}, q{2.0}, dual_q{2.0};
  Operator2x2 target;
  double sampled_min_distance = 0;
  int samples = 0;
  double net_radius = 0;
  int net_points = 0;
  int net_extreme_hits = 0;
  int net_unknown = 0;
  int oracle_checked = 0;
  int oracle_failures = 0;
  int norm_failures = 0;
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  // Raw distances: random segment endpoints first, then the closed forms.
  std::vector<double> distances;
};

// x unit in l^p, y unit in l^{q'}, x1 x2 y1 y2 != 0.
ProbeReport density_probe(Exponent p, Exponent q, const LpVector& x, const LpVector& y,
                          const ProbeOptions& opt = {});

struct ClosureRow {
  double s = 0;
  Verdict verdict = Verdict::Unknown;  // classification of diag(1, s)
  double sampled_min_distance = 0;
  // distances from diag(1, s) along type (a) extremes T_{s*}(x_n, x_n), x_n -> e1
  std::vector<double> sequence_distances;
  bool sequence_approaches = false;
};

struct ClosureReport {
  Exponent p{2.0};
  std::vector<ClosureRow> rows;
};

// p = q != 2. Observational only.
ClosureReport closure_probe(Exponent p, const std::vector<double>& s_values,
                            const ProbeOptions& opt = {});

struct ClosednessOptions {
  int steps = 48;          // sequence length, h_n = start 2^-n
  int window = 9;          // Aitken estimates pooled at the tail
  double start = 0.05;     // initial offset of (x_n, y_n) from the limit
  std::uint64_t seed = 20240611;
  Exec exec = default_exec();
};

struct ClosednessReport {
  Exponent p{2.0}, q{2.0};
  Region region = Region::I;
  int sequences = 0;
  int non_extreme_limits = 0;
  std::vector<std::string> limit_verdicts;
  std::vector<std::string> limit_kinds;  // which limit family was sampled
};

// Regions i, ii, iii and v. Each sequence converges to a pair (x, y); the
// limiting segment parameter is Aitken-extrapolated from s*(x_n, y_n) and the
// limit operator classified.
ClosednessReport closedness_check(Exponent p, Exponent q, int n_sequences,
                                  const ClosednessOptions& opt = {});

}  // namespace clab
