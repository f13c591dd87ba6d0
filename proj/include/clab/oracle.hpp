#pragma once

#include <cstdint>
#include <optional>

#include "clab/opnorm.hpp"

namespace clab {

struct OracleOptions {
  int n_directions = 720;
  double eps_min = 1e-4;
  // Allowed growth of ‖T ± εD‖_q^q - 1 over the same quantity for T, in
  // quad precision. Relative to T so that the rounding of T itself cancels.
  double tol_oracle = 1e-30;
  int bisect_iterations = 40;
  std::uint64_t seed = 20240611;
  Exec exec = default_exec();
};

struct OracleVerdict {
  enum Kind { ConsistentWithExtreme, NotExtreme } verdict = ConsistentWithExtreme;
  std::optional<Operator2x2> witness;  // unit Frobenius direction D
  double epsilon = 0;                  // largest ε found for the witness
  long direction_index = -1;           // 0 segment, 1..8 axes, then random
  int directions_scanned = 0;
};

const char* oracle_name(OracleVerdict::Kind k);

// Requires op_norm(T) = 1 within 1e-8. Throws InconsistencyError if a
// NotExtreme witness fails midpoint_check at 1e-9 after rounding to double.
OracleVerdict extremality_probe(const Operator2x2& t, const OracleOptions& opt = {});

// A != B beyond tol, both contractions at tol, (A + B)/2 = T within tol.
bool midpoint_check(const Operator2x2& t, const Operator2x2& a, const Operator2x2& b, double tol);

}  // namespace clab
