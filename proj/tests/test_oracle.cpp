#include <doctest.h>

#include <cmath>

#include "clab/classify.hpp"
#include "clab/oracle.hpp"
#include "clab/rng.hpp"

using namespace clab;

TEST_CASE("extremality_probe anchors") {
  const Exponent two(2.0), three(3.0), q15(1.5);
  const Operator2x2 d{1, 0, 0, 0.5, three, three};
  const OracleVerdict v = extremality_probe(d);
  CHECK(v.verdict == OracleVerdict::NotExtreme);
  REQUIRE(v.witness.has_value());
  CHECK(std::fabs(std::fabs(v.witness->a22) - 1) <= 1e-6);
  CHECK(v.epsilon >= 1e-4);
  CHECK(midpoint_check(d, d + v.epsilon * *v.witness, d - v.epsilon * *v.witness, 1e-9));

  CHECK(extremality_probe(Operator2x2::identity(two, two)).verdict == OracleVerdict::ConsistentWithExtreme);
  CHECK(extremality_probe({1, 0, 0, 0, three, q15}).verdict == OracleVerdict::ConsistentWithExtreme);
  CHECK_THROWS_AS(extremality_probe(1.5 * d), DomainError);
}

TEST_CASE("midpoint_check") {
  const Exponent p(3.0);
  const Operator2x2 t{1, 0, 0, 0.5, p, p};
  CHECK(!midpoint_check(t, t, t, 1e-9));
  const Operator2x2 a{1, 0, 0, 0.4, p, p}, b{1, 0, 0, 0.6, p, p};
  CHECK(midpoint_check(t, a, b, 1e-9));
  CHECK(!midpoint_check(t, {1, 0, 0, 0.4, p, p}, {1, 0, 0, 0.7, p, p}, 1e-9));
  const Operator2x2 big{1.1, 0, 0, 0.6, p, p};
  CHECK(!midpoint_check({1.05, 0, 0, 0.5, p, p}, {1, 0, 0, 0.4, p, p}, big, 1e-9));

  const LpVector x = unit_from_first(0.8, Exponent(2.5)), y = unit_from_first(0.7, Exponent(1.7));
  const double s = 0.1;
  CHECK(midpoint_check(build_ts(x, y, s), build_ts(x, y, s - 1e-3), build_ts(x, y, s + 1e-3), 1e-8));
}

TEST_CASE("soundness and completeness on segment interiors") {
  Stream rng(51);
  OracleOptions o;
  o.n_directions = 120;
  SegmentOptions so;
  so.per_decade = 64;
  for (int i = 0; i < 12; ++i) {
    const Exponent p(1.2 + 4 * rng.uniform()), q(1.2 + 4 * rng.uniform());
    const LpVector x = unit_from_power(0.05 + 0.9 * rng.uniform(), p);
    const LpVector y = unit_from_power(0.05 + 0.9 * rng.uniform(), q);
    const SegmentData sd = segment_ixy(x, y, so);
    if (sd.s_star_plus - sd.s_star_minus < 0.05) continue;
    const double s = sd.s_star_minus + (0.1 + 0.8 * rng.uniform()) * (sd.s_star_plus - sd.s_star_minus);
    const Operator2x2 t = build_ts(x, y, s);
    if (std::fabs(op_norm(t).norm - 1) > 1e-8) continue;
    const OracleVerdict v = extremality_probe(t, o);
    CHECK(v.verdict == OracleVerdict::NotExtreme);
    if (v.witness) CHECK(midpoint_check(t, t + v.epsilon * *v.witness, t - v.epsilon * *v.witness, 1e-9));
  }
}

TEST_CASE("oracle never contradicts classify on closed regions") {
  Stream rng(52);
  OracleOptions o;
  o.n_directions = 120;
  const double pairs[][2] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {3, 1.5}};
  for (const auto& pq : pairs) {
    const Exponent p(pq[0]), q(pq[1]);
    for (int i = 0; i < 6; ++i) {
      Operator2x2 t{rng.normal(), rng.normal(), rng.normal(), rng.normal(), p, q};
      if (i % 2) {
        t = generate_extreme(unit_from_power(rng.uniform(), p), unit_from_power(rng.uniform(), q), Sign::Plus);
      } else {
        t = (1.0 / op_norm(t).norm) * t;
      }
      const Classification c = classify(t);
      const OracleVerdict v = extremality_probe(t, o);
      if (v.verdict == OracleVerdict::NotExtreme) CHECK(c.verdict == Verdict::NotExtreme);
      if (is_extreme(c.verdict)) CHECK(v.verdict == OracleVerdict::ConsistentWithExtreme);
    }
  }
}

TEST_CASE("oracle is deterministic across execution modes") {
  const Exponent p(3.0), q(1.5);
  const Operator2x2 t = build_ts(unit_from_first(0.8, p), unit_from_first(0.7, q), 0);
  OracleOptions a, b;
  a.n_directions = b.n_directions = 200;
  a.exec = Exec::Serial;
  b.exec = Exec::Parallel;
  const OracleVerdict u = extremality_probe(t, a), v = extremality_probe(t, b);
  CHECK(u.verdict == v.verdict);
  CHECK(u.direction_index == v.direction_index);
  CHECK(u.epsilon == v.epsilon);
}
