#include <doctest.h>

#include <cmath>

#include "clab/opnorm.hpp"
#include "clab/rng.hpp"
#include "clab/segment.hpp"
#include "oracles.hpp"

using namespace clab;

namespace {

LpVector e1(Exponent p) { return {1, 0, p}; }

// |F_q(y, r s) - F_p(x, r)^{q/p}| in long double
long double e4_residual(const LpVector& x, const LpVector& y, double r, double s) {
  const long double q = y.exponent.value(), p = x.exponent.value();
  return std::fabs(oracle::big_f_ld(y, (long double)r * s) - std::pow(oracle::big_f_ld(x, r), q / p));
}

LpVector random_unit(Stream& rng, Exponent p) { return unit_from_power(0.02 + 0.96 * rng.uniform(), p); }

}  // namespace

TEST_CASE("build_ts") {
  const Exponent p(3.0);
  const Operator2x2 t = build_ts(e1(p), e1(p), 0.37);
  CHECK(max_abs_diff(t, {1, 0, 0, 0.37, p, p}) <= 1e-15);

  const double c = std::pow(2.0, -1 / 3.0);
  const Operator2x2 id = build_ts({c, c, p}, {c, c, p}, 1);
  CHECK(max_abs_diff(id, Operator2x2::identity(p, p)) <= 1e-14);

  Stream rng(31);
  for (int i = 0; i < 50; ++i) {
    const Exponent pp(1.1 + 5 * rng.uniform()), qq(1.1 + 5 * rng.uniform());
    const LpVector x = random_unit(rng, pp), y = random_unit(rng, qq);
    const Operator2x2 t0 = build_ts(x, y, 0);
    CHECK(max_abs_diff(t0, tensor(duality_map(x), y, pp, qq)) <= 1e-15);
    const Operator2x2 ts = build_ts(x, y, 2 * rng.normal());
    const LpVector tx = apply(ts, x);
    CHECK(std::fabs(tx.x1 - y.x1) <= 1e-12);
    CHECK(std::fabs(tx.x2 - y.x2) <= 1e-12);
    // T_s f_p(x, r) = f_q(y, r s)
    const double s = rng.normal(), r = 3 * rng.normal();
    const LpVector a = apply(build_ts(x, y, s), curve_f(x, ExtReal::finite(r)));
    const LpVector b = curve_f(y, ExtReal::finite(r * s));
    CHECK(std::fabs(a.x1 - b.x1) <= 1e-12 * (1 + std::fabs(b.x1)));
    CHECK(std::fabs(a.x2 - b.x2) <= 1e-12 * (1 + std::fabs(b.x2)));
  }
  CHECK_THROWS_AS(build_ts({0.9, 0.9, p}, e1(p), 0), DomainError);
}

TEST_CASE("s_at_r") {
  const Exponent p(2.5);
  for (double r : {-50.0, -1.0, 0.01, 0.3, 7.0}) {
    CHECK(s_at_r(e1(p), e1(p), ExtReal::finite(r), Sign::Plus) == doctest::Approx(1).epsilon(1e-12));
    CHECK(s_at_r(e1(p), e1(p), ExtReal::finite(r), Sign::Minus) == doctest::Approx(-1).epsilon(1e-12));
  }
  CHECK(s_at_r(e1(Exponent(1.5)), e1(Exponent(3.0)), ExtReal::pos_inf(), Sign::Plus) ==
        doctest::Approx(1).epsilon(1e-12));
  CHECK_THROWS_AS(s_at_r(e1(p), e1(p), ExtReal::finite(0), Sign::Plus), DomainError);

  const Exponent p2(2.0), q3(3.0);
  const LpVector x = e1(p2), y = unit_from_first(0.9, q3);
  const double s = s_at_r(x, y, ExtReal::finite(0.7), Sign::Plus);
  CHECK(s > 0);
  CHECK(e4_residual(x, y, 0.7, s) <= 1e-10);

  Stream rng(32);
  for (int i = 0; i < 200; ++i) {
    const Exponent pp(1.1 + 5 * rng.uniform()), qq(1.1 + 5 * rng.uniform());
    const LpVector a = random_unit(rng, pp), b = random_unit(rng, qq);
    const double r = std::pow(10.0, 6 * rng.uniform() - 3) * (rng.uniform() < 0.5 ? -1 : 1);
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      const double v = s_at_r(a, b, ExtReal::finite(r), sg);
      CHECK(v * sign_value(sg) > 0);
      CHECK(e4_residual(a, b, r, v) <= 1e-10 * std::pow(oracle::big_f_ld(a, r), qq.value() / pp.value()));
    }
  }
}

TEST_CASE("s_at_r is continuous in r") {
  const Exponent p(3.0), q(1.7);
  const LpVector x = unit_from_first(0.8, p), y = unit_from_first(0.6, q);
  double prev = s_at_r(x, y, ExtReal::finite(0.1), Sign::Plus);
  for (int k = 1; k <= 400; ++k) {
    const double r = 0.1 * std::pow(10.0, k / 200.0);
    const double v = s_at_r(x, y, ExtReal::finite(r), Sign::Plus);
    CHECK(std::fabs(v - prev) <= 0.05);
    prev = v;
  }
}

TEST_CASE("s_star anchors") {
  Stream rng(33);
  const Exponent two(2.0);
  for (int i = 0; i < 5; ++i) {
    const LpVector x = random_unit(rng, two), y = random_unit(rng, two);
    CHECK(std::fabs(s_star(x, y, Sign::Plus).value - 1) <= 1e-8);
    CHECK(std::fabs(s_star(x, y, Sign::Minus).value + 1) <= 1e-8);
  }
  const SStar lo = s_star(e1(Exponent(3.0)), e1(Exponent(1.5)), Sign::Plus);
  CHECK(std::fabs(lo.value) <= 1e-6);
  CHECK(!lo.witness.has_value());

  const SStar hi = s_star(e1(Exponent(1.5)), e1(Exponent(3.0)), Sign::Plus);
  CHECK(std::fabs(hi.value - 1) <= 1e-8);
  REQUIRE(hi.witness.has_value());
  CHECK(!hi.witness->is_finite());
  CHECK(std::fabs(s_star(e1(Exponent(1.5)), e1(Exponent(3.0)), Sign::Minus).value + 1) <= 1e-8);
}

TEST_CASE("s_star_star") {
  const Exponent p2(2.0), q4(4.0);
  const double c = std::pow(2.0, -0.25);
  const ExtReal v = s_star_star(e1(p2), {c, c, q4}, Sign::Plus);
  CHECK(v.is_finite());
  CHECK(v.value() == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-9));
  CHECK(std::fabs(v.value() - 0.816497) <= 1e-6);

  const Exponent p3(3.0);
  const LpVector x = unit_from_first(0.8, p3);
  CHECK(s_star_star(x, x, Sign::Plus).value() == doctest::Approx(1).epsilon(1e-9));
  CHECK(s_star_star(x, x, Sign::Minus).value() == doctest::Approx(-1).epsilon(1e-9));

  // closed form against the dyadic extrapolation
  Stream rng(34);
  int compared = 0;
  while (compared < 50) {
    const Exponent pp(1.2 + 4 * rng.uniform()), qq(1.2 + 4 * rng.uniform());
    if (pp.is_two() || qq.is_two()) continue;
    const LpVector a = unit_from_power(0.1 + 0.8 * rng.uniform(), pp);
    const LpVector b = unit_from_power(0.1 + 0.8 * rng.uniform(), qq);
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      const ExtReal cf = s_star_star(a, b, sg), nu = s_star_star_numeric(a, b, sg);
      REQUIRE(cf.is_finite());
      REQUIRE(nu.is_finite());
      CHECK(std::fabs(cf.value() - nu.value()) <= 1e-6 * std::max(1.0, std::fabs(cf.value())));
      CHECK(s_star_star_agree(cf, nu));
    }
    ++compared;
  }
}

TEST_CASE("segment_ixy ordering and endpoint sandwich") {
  Stream rng(35);
  SegmentOptions opt;
  opt.per_decade = 64;
  for (int i = 0; i < 30; ++i) {
    const Exponent pp(1.2 + 4 * rng.uniform()), qq(1.2 + 4 * rng.uniform());
    const LpVector x = random_unit(rng, pp), y = random_unit(rng, qq);
    const SegmentData d = segment_ixy(x, y, opt);
    CHECK(d.s_star_minus <= 0);
    CHECK(d.s_star_plus >= 0);
    CHECK(d.s_ss_minus.as_double() <= d.s_star_minus + 1e-9);
    CHECK(d.s_ss_plus.as_double() >= d.s_star_plus - 1e-9);

    CHECK(is_contraction(build_ts(x, y, d.s_star_plus), 1e-8));
    CHECK(is_contraction(build_ts(x, y, d.s_star_minus), 1e-8));
    // past an endpoint reached at a finite witness, the norm exceeds 1
    if (d.witness_plus && d.witness_plus->is_finite())
      CHECK(!is_contraction(build_ts(x, y, d.s_star_plus + 1e-4), 1e-9));
    if (d.witness_minus && d.witness_minus->is_finite())
      CHECK(!is_contraction(build_ts(x, y, d.s_star_minus - 1e-4), 1e-9));
  }
  const Exponent two(2.0);
  const SegmentData d = segment_ixy(unit_from_first(0.3, two), unit_from_first(0.95, two));
  CHECK(std::fabs(d.s_star_plus - 1) <= 1e-8);
  CHECK(std::fabs(d.s_star_minus + 1) <= 1e-8);

  const SegmentData z = segment_ixy(e1(Exponent(3.0)), e1(Exponent(1.5)));
  CHECK(std::fabs(z.s_star_plus) <= 1e-6);
  CHECK(std::fabs(z.s_star_minus) <= 1e-6);
}

TEST_CASE("decompose reconstructs T_s") {
  Stream rng(36);
  for (int i = 0; i < 50; ++i) {
    const Exponent pp(1.2 + 4 * rng.uniform()), qq(1.2 + 4 * rng.uniform());
    const LpVector x = random_unit(rng, pp), y = random_unit(rng, qq);
    const double s = rng.normal();
    const Decomposition dc = decompose(build_ts(x, y, s), x);
    CHECK(std::fabs(dc.s - s) <= 1e-12 * (1 + std::fabs(s)));
    CHECK(dc.residual <= 1e-12);
  }
}

TEST_CASE("serial and parallel s_star agree bitwise") {
  Stream rng(37);
  for (int i = 0; i < 5; ++i) {
    const Exponent pp(1.2 + 4 * rng.uniform()), qq(1.2 + 4 * rng.uniform());
    const LpVector x = random_unit(rng, pp), y = random_unit(rng, qq);
    SegmentOptions a, b;
    a.exec = Exec::Serial;
    b.exec = Exec::Parallel;
    const SStar u = s_star(x, y, Sign::Plus, a), v = s_star(x, y, Sign::Plus, b);
    CHECK(u.value == v.value);
    CHECK(u.witness.has_value() == v.witness.has_value());
  }
}
