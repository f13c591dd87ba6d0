#include <doctest.h>

#include <cmath>

#include "clab/mip.hpp"
#include "clab/oracle.hpp"

using namespace clab;

namespace {

// spectral norm of a 2x2 matrix
double spec2(double a, double b, double c, double d) {
  const double f = a * a + b * b + c * c + d * d, det = a * d - b * c;
  return std::sqrt(0.5 * (f + std::sqrt(std::max(0.0, f * f - 4 * det * det))));
}

ProbeOptions small_probe() {
  ProbeOptions o;
  o.n_samples = 60;
  o.net_points = 150;
  o.family_grid = 64;
  return o;
}

}  // namespace

TEST_CASE("dual_space and mip_verdict") {
  const ExponentPair a = dual_space(Exponent(2.0), Exponent(2.0));
  CHECK(a.p.value() == 2);
  CHECK(a.q.value() == doctest::Approx(2).epsilon(1e-15));
  const ExponentPair b = dual_space(Exponent(3.0), Exponent(1.5));
  CHECK(b.q.value() == doctest::Approx(3).epsilon(1e-14));
  const ExponentPair c = dual_space(Exponent(4.0), Exponent(3.0));
  CHECK(c.q.value() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(region_of(c.p, c.q) == Region::V);

  CHECK(mip_verdict(Exponent(3.0), Exponent(1.5)) == MipVerdict::FailsMIP);
  CHECK(mip_verdict(Exponent(2.0), Exponent(7.0)) == MipVerdict::FailsMIP);
  CHECK(mip_verdict(Exponent(3.0), Exponent(5.0)) == MipVerdict::FailsMIP);
  CHECK(mip_verdict(Exponent(1.5), Exponent(1.8)) == MipVerdict::OutOfScope);
  CHECK(mip_verdict(Exponent(1.5), Exponent(2.5)) == MipVerdict::OutOfScope);
  const double vals[] = {1.2, 1.5, 1.8, 2.0, 2.5, 3.0, 4.0, 6.0};
  for (double p : vals)
    for (double q : vals) CHECK(mip_verdict(Exponent(p), Exponent(q)) == mip_verdict(Exponent(q), Exponent(p)));
}

TEST_CASE("density_probe, Hilbert case against the orthogonal group") {
  const Exponent two(2.0);
  const double c = std::sqrt(0.5);
  const LpVector x{c, c, two};
  ProbeOptions o = small_probe();
  o.verify_fraction = 0.1;
  const ProbeReport r = density_probe(two, two, x, x, o);
  // brute force over rotations and reflections
  double best = 1e9;
  for (int k = 0; k < 200000; ++k) {
    const double t = 2 * M_PI * k / 200000, ct = std::cos(t), st = std::sin(t);
    best = std::min(best, spec2(0.5 - ct, 0.5 + st, 0.5 - st, 0.5 - ct));
    best = std::min(best, spec2(0.5 - ct, 0.5 - st, 0.5 - st, 0.5 + ct));
  }
  CHECK(best > 0.1);
  CHECK(r.sampled_min_distance >= best - 1e-9);
  CHECK(r.sampled_min_distance <= best + 0.05);
  CHECK(r.net_extreme_hits == 0);
  CHECK(r.norm_failures == 0);
  CHECK(r.oracle_failures == 0);
  CHECK(r.oracle_checked > 0);
  CHECK(r.verdict == ProbeVerdict::GapEvidence);
  for (double d : r.distances) CHECK(d >= r.sampled_min_distance);
}

TEST_CASE("density_probe in region v for the operator space") {
  const Exponent p(4.0), q(3.0);
  const ExponentPair d = dual_space(p, q);
  const LpVector x = unit_from_first(0.8, p), y = unit_from_first(0.7, d.q);
  const ProbeReport r = density_probe(p, q, x, y, small_probe());
  CHECK(r.net_extreme_hits == 0);
  CHECK(r.sampled_min_distance >= 0.01);
  CHECK(r.samples > 0);
  CHECK(r.verdict == ProbeVerdict::GapEvidence);
  CHECK(max_abs_diff(r.target, tensor(duality_map(x), y, p, d.q)) <= 1e-15);

  // sign flips of the target coordinates
  const ProbeReport s = density_probe(p, q, {x.x1, -x.x2, p}, {-y.x1, y.x2, d.q}, small_probe());
  CHECK(std::fabs(s.sampled_min_distance - r.sampled_min_distance) <= 0.1 * r.sampled_min_distance);
  CHECK(s.net_extreme_hits == 0);
}

TEST_CASE("density_probe preconditions") {
  const Exponent p(3.0), q(1.5);
  const ExponentPair d = dual_space(p, q);
  CHECK_THROWS_AS(density_probe(p, q, {1, 0, p}, unit_from_first(0.7, d.q), small_probe()), DomainError);
  CHECK_THROWS_AS(density_probe(Exponent(1.5), Exponent(1.8), unit_from_first(0.8, Exponent(1.5)),
                                unit_from_first(0.7, Exponent(1.8).conjugate()), small_probe()),
                  DomainError);
}

TEST_CASE("closure_probe") {
  ProbeOptions o = small_probe();
  const ClosureReport r = closure_probe(Exponent(3.0), {-1.0, 0.0, 0.5, 1.0}, o);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.rows[0].sampled_min_distance <= 1e-12);
  CHECK(r.rows[3].sampled_min_distance <= 1e-12);
  CHECK(r.rows[1].verdict == Verdict::NotExtreme);
  CHECK(r.rows[2].verdict == Verdict::NotExtreme);
  CHECK(r.rows[2].sampled_min_distance > 0);
  CHECK(std::isfinite(r.rows[2].sampled_min_distance));
  for (const ClosureRow& row : r.rows)
    for (double dd : row.sequence_distances) CHECK(dd >= 0);
  CHECK_THROWS_AS(closure_probe(Exponent(2.0), {0.5}, o), DomainError);
}

TEST_CASE("closedness_check") {
  ClosednessOptions o;
  const ClosednessReport a = closedness_check(Exponent(2.0), Exponent(3.0), 6, o);
  CHECK(a.region == Region::II);
  CHECK(a.sequences == 6);
  CHECK(a.non_extreme_limits == 0);
  CHECK(a.limit_verdicts.size() == 6);
  const ClosednessReport b = closedness_check(Exponent(3.0), Exponent(1.5), 6, o);
  CHECK(b.region == Region::V);
  CHECK(b.non_extreme_limits == 0);
  CHECK_THROWS_AS(closedness_check(Exponent(3.0), Exponent(3.0), 2, o), DomainError);
  CHECK_THROWS_AS(closedness_check(Exponent(1.5), Exponent(1.8), 2, o), DomainError);
  o.steps = 2;
  CHECK_THROWS_AS(closedness_check(Exponent(2.0), Exponent(3.0), 2, o), DomainError);
}

TEST_CASE("probe determinism across execution modes") {
  const Exponent p(3.0), q(1.5);
  const ExponentPair d = dual_space(p, q);
  ProbeOptions a = small_probe(), b = small_probe();
  a.exec = Exec::Serial;
  b.exec = Exec::Parallel;
  const LpVector x = unit_from_first(0.8, p), y = unit_from_first(0.7, d.q);
  const ProbeReport u = density_probe(p, q, x, y, a), v = density_probe(p, q, x, y, b);
  CHECK(u.distances == v.distances);
  CHECK(u.net_extreme_hits == v.net_extreme_hits);
  CHECK(u.net_unknown == v.net_unknown);
}
