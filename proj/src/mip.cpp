#include "clab/mip.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clab/oracle.hpp"
#include "clab/rng.hpp"

namespace clab {

namespace {

constexpr double kPi = std::numbers::pi;

bool same_exponent(const Exponent& a, const Exponent& b) { return a.approx_equal(b); }

LpVector random_unit(Stream& rng, Exponent e) {
  const LpVector v = unit_from_power(rng.arcsine(), e);
  return {rng.sign() * v.x1, rng.sign() * v.x2, e};
}

LpVector axis(int i, Exponent e) { return i == 0 ? LpVector{1, 0, e} : LpVector{0, 1, e}; }

// Closed-form extreme contractions of the region of (p, q), on a grid.
std::vector<Operator2x2> closed_form_extremes(Exponent p, Exponent q, int grid) {
  std::vector<Operator2x2> out;
  const Region reg = region_of(p, q);
  const double pv = p.value(), qv = q.value();
  auto sphere = [&](int k, Exponent e) { return sphere_point(kPi * k / grid, e); };
  switch (reg) {
    case Region::I:
      for (int k = 0; k < grid; ++k) {
        const double c = std::cos(2 * kPi * k / grid), s = std::sin(2 * kPi * k / grid);
        out.push_back({c, -s, s, c, p, q});
        out.push_back({c, s, s, -c, p, q});
      }
      break;
    case Region::II:
    case Region::III: {
      const bool ii = reg == Region::II;
      const double e = ii ? qv : pv;
      if ((ii && qv < 2) || (!ii && pv > 2)) {
        for (int k = 0; k < grid; ++k)
          for (int i = 0; i < 2; ++i) {
            if (ii) out.push_back(tensor(duality_map(sphere(k, p)), axis(i, q), p, q));
            else out.push_back(tensor(axis(i, p), sphere(k, q), p, q));
          }
        break;
      }
      const double h = std::pow(2.0, -1.0 / e);
      const double sv = ii ? std::pow(2.0, (qv - 2) / qv) / std::sqrt(qv - 1)
                           : std::sqrt(pv - 1) * std::pow(2.0, (2 - pv) / pv);
      for (int k = 0; k < grid; ++k)
        for (double sg2 : {1.0, -1.0})
          for (double ss : {sv, -sv}) {
            if (ii) out.push_back(build_ts(sphere(k, p), LpVector{h, sg2 * h, q}, ss));
            else out.push_back(build_ts(LpVector{h, sg2 * h, p}, sphere(k, q), ss));
          }
      break;
    }
    case Region::IV:
      // signed permutations are isometries, hence extreme
      for (double a : {1.0, -1.0})
        for (double b : {1.0, -1.0}) {
          out.push_back({a, 0, 0, b, p, q});
          out.push_back({0, a, b, 0, p, q});
        }
      for (int k = 0; k < grid; ++k)
        for (int i = 0; i < 2; ++i) {
          if (pv > 2) out.push_back(tensor(axis(i, p), sphere(k, q), p, q));
          else out.push_back(tensor(duality_map(sphere(k, p)), axis(i, q), p, q));
        }
      break;
    case Region::V:
      for (int k = 0; k < grid; ++k)
        for (int i = 0; i < 2; ++i) {
          out.push_back(tensor(duality_map(sphere(k, p)), axis(i, q), p, q));
          out.push_back(tensor(axis(i, p), sphere(k, q), p, q));
        }
      break;
    default:
      break;
  }
  return out;
}

struct ExtremeSample {
  std::vector<Operator2x2> ops;
  long n_random = 0;
};

ExtremeSample sample_extremes(Exponent p, Exponent q, const ProbeOptions& opt) {
  ExtremeSample s;
  s.ops.resize(opt.n_samples);
  s.n_random = opt.n_samples;
  SegmentOptions seg;
  seg.exec = Exec::Serial;
  auto one = [&](long i) {
    Stream rng(opt.seed, static_cast<std::uint64_t>(i));
    const LpVector x = random_unit(rng, p);
    const LpVector y = random_unit(rng, q);
    const Sign sg = rng.sign() > 0 ? Sign::Plus : Sign::Minus;
    s.ops[i] = generate_extreme(x, y, sg, seg);
  };
  if (opt.exec == Exec::Serial) {
    for (long i = 0; i < opt.n_samples; ++i) one(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < opt.n_samples; ++i) one(i);
  }
  for (const Operator2x2& t : closed_form_extremes(p, q, opt.family_grid)) s.ops.push_back(t);
  return s;
}

std::vector<double> distances_to(const std::vector<Operator2x2>& ops, const Operator2x2& target,
                                 Exec ex) {
  std::vector<double> d(ops.size());
  NormOptions inner;
  inner.exec = Exec::Serial;
  kernels::map_index(
      static_cast<long>(ops.size()), [&](long i) { return op_norm(ops[i] - target, inner).norm; },
      d.data(), ex);
  return d;
}

}  // namespace

ExponentPair dual_space(Exponent p, Exponent q) { return {p, q.conjugate()}; }

const char* mip_name(MipVerdict v) { return v == MipVerdict::FailsMIP ? "FailsMIP" : "OutOfScope"; }
const char* probe_name(ProbeVerdict v) {
  return v == ProbeVerdict::GapEvidence ? "GapEvidence" : "Inconclusive";
}

MipVerdict mip_verdict(Exponent p, Exponent q) {
  const double pv = p.value(), qv = q.value();
  if (std::fabs(1 / pv + 1 / qv - 1) <= 1e-10) return MipVerdict::FailsMIP;
  if (p.is_two() || q.is_two()) return MipVerdict::FailsMIP;
  if (pv > 2 && qv > 2) return MipVerdict::FailsMIP;
  return MipVerdict::OutOfScope;
}

ProbeReport density_probe(Exponent p, Exponent q, const LpVector& x, const LpVector& y,
                          const ProbeOptions& opt) {
  if (mip_verdict(p, q) != MipVerdict::FailsMIP) throw DomainError("density_probe: (p, q) out of scope");
  const ExponentPair d = dual_space(p, q);
  if (!same_exponent(x.exponent, p) || !same_exponent(y.exponent, d.q))
    throw DomainError("density_probe: x must live in l^p and y in l^{q'}");
  if (x.x1 * x.x2 * y.x1 * y.x2 == 0) throw DomainError("density_probe: needs x1 x2 y1 y2 != 0");
  if (opt.n_samples < 0 || opt.net_points < 0 || !(opt.net_radius > 0))
    throw DomainError("density_probe: bad options");
  const LpVector xs{x.x1, x.x2, d.p}, ys{y.x1, y.x2, d.q};

  ProbeReport rep;
  rep.p = p;
  rep.q = q;
  rep.dual_q = d.q;
  rep.target = tensor(duality_map(xs), ys, d.p, d.q);
  rep.net_radius = opt.net_radius;
  rep.net_points = opt.net_points;

  const ExtremeSample ex = sample_extremes(d.p, d.q, opt);
  rep.samples = static_cast<int>(ex.ops.size());
  rep.distances = distances_to(ex.ops, rep.target, opt.exec);
  rep.sampled_min_distance = rep.distances.empty()
                                 ? std::numeric_limits<double>::infinity()
                                 : *std::min_element(rep.distances.begin(), rep.distances.end());

  // Sanity of the sampler: norm one everywhere, oracle on a subsample.
  {
    NormOptions inner;
    inner.exec = Exec::Serial;
    std::vector<double> bad(ex.ops.size());
    kernels::map_index(
        static_cast<long>(ex.ops.size()),
        [&](long i) { return std::fabs(op_norm(ex.ops[i], inner).norm - 1) > 1e-8 ? 1.0 : 0.0; },
        bad.data(), opt.exec);
    for (double b : bad) rep.norm_failures += b > 0;
  }
  if (opt.verify_fraction > 0) {
    Stream pick(opt.seed, 0x5eed);
    std::vector<long> idx;
    for (long i = 0; i < static_cast<long>(ex.ops.size()); ++i)
      if (pick.uniform() < opt.verify_fraction) idx.push_back(i);
    OracleOptions oo;
    oo.seed = opt.seed;
    oo.exec = Exec::Serial;
    std::vector<double> fail(idx.size());
    kernels::map_index(
        static_cast<long>(idx.size()),
        [&](long k) {
          return extremality_probe(ex.ops[idx[k]], oo).verdict == OracleVerdict::NotExtreme ? 1.0 : 0.0;
        },
        fail.data(), opt.exec);
    rep.oracle_checked = static_cast<int>(idx.size());
    for (double f : fail) rep.oracle_failures += f > 0;
  }

  // Net of unit-norm operators around the target.
  ClassifyOptions co;
  co.norm.exec = Exec::Serial;
  co.segment.exec = Exec::Serial;
  co.segment.per_decade = opt.net_per_decade;
  NormOptions inner;
  inner.exec = Exec::Serial;
  std::vector<double> code(opt.net_points);
  kernels::map_index(
      opt.net_points,
      [&](long j) {
        Stream rng(opt.seed ^ 0x6e6574ULL, static_cast<std::uint64_t>(j));
        Operator2x2 e{rng.normal(), rng.normal(), rng.normal(), rng.normal(), d.p, d.q};
        const double r = 0.5 * opt.net_radius * rng.uniform();
        Operator2x2 m = rep.target + (r / op_norm(e, inner).norm) * e;
        m = (1.0 / op_norm(m, inner).norm) * m;
        const Classification c = classify(m, co);
        if (is_extreme(c.verdict)) return 1.0;
        return c.verdict == Verdict::Unknown ? 2.0 : 0.0;
      },
      code.data(), opt.exec);
  for (double c : code) {
    rep.net_extreme_hits += c == 1.0;
    rep.net_unknown += c == 2.0;
  }
  rep.verdict = rep.net_extreme_hits == 0 && rep.net_unknown == 0 &&
                        rep.sampled_min_distance >= opt.gap_threshold
                    ? ProbeVerdict::GapEvidence
                    : ProbeVerdict::Inconclusive;
  return rep;
}

ClosureReport closure_probe(Exponent p, const std::vector<double>& s_values,
                            const ProbeOptions& opt) {
  if (p.is_two()) throw DomainError("closure_probe: needs p = q != 2");
  ClosureReport rep;
  rep.p = p;
  const ExtremeSample ex = sample_extremes(p, p, opt);
  SegmentOptions seg;
  seg.exec = Exec::Serial;
  ClassifyOptions co;
  for (double s : s_values) {
    ClosureRow row;
    row.s = s;
    const Operator2x2 t{1, 0, 0, s, p, p};
    if (std::fabs(s) <= 1) row.verdict = classify(t, co).verdict;
    const auto d = distances_to(ex.ops, t, opt.exec);
    row.sampled_min_distance = d.empty() ? 0 : *std::min_element(d.begin(), d.end());
    const Sign sg = s >= 0 ? Sign::Plus : Sign::Minus;
    for (int k = 1; k <= 8; ++k) {
      const LpVector xn = unit_from_power(1 - std::pow(10.0, -k), p);
      const Operator2x2 e = generate_extreme(xn, xn, sg, seg);
      row.sequence_distances.push_back(op_norm(e - t).norm);
    }
    row.sequence_approaches =
        row.sequence_distances.back() < 0.1 * row.sequence_distances.front();
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ClosednessReport closedness_check(Exponent p, Exponent q, int n_sequences,
                                  const ClosednessOptions& opt) {
  const Region reg = region_of(p, q);
  if (reg == Region::IV) throw DomainError("closedness_check: region iv is excluded");
  if (is_open(reg)) throw DomainError("closedness_check: region not covered");
  if (n_sequences < 0 || opt.steps < 3 || opt.window < 1) throw DomainError("closedness_check: bad options");
  ClosednessReport rep;
  rep.p = p;
  rep.q = q;
  rep.region = reg;
  rep.sequences = n_sequences;
  rep.limit_verdicts.resize(n_sequences);
  rep.limit_kinds.resize(n_sequences);
  static const char* kinds[] = {"interior", "x_axis", "y_axis", "symmetric"};
  std::vector<double> bad(n_sequences);
  auto one = [&](long i) {
    Stream rng(opt.seed, static_cast<std::uint64_t>(i));
    const int kind = static_cast<int>(i % 4);
    double ax = 0.05 + 0.9 * rng.uniform(), by = 0.05 + 0.9 * rng.uniform();
    if (kind == 1) ax = 1;
    if (kind == 2) by = 1;
    if (kind == 3) ax = by = 0.5;
    const double dx = 2 * rng.uniform() - 1, dy = 2 * rng.uniform() - 1;
    const Sign sg = rng.sign() > 0 ? Sign::Plus : Sign::Minus;
    // Near an axis the small coordinate is set directly; 1 - h would round away.
    auto point = [&](double a, double dir, double h, Exponent e) {
      if (a >= 1) {
        const double ev = e.value();
        return LpVector{std::pow(1 - h, 1 / ev), std::copysign(std::pow(h, 1 / ev), dir), e};
      }
      return unit_from_power(std::clamp(a + dir * h, 0.0, 1.0), e);
    };
    SegmentOptions seg;
    seg.exec = Exec::Serial;
    // only the tail feeds the extrapolation
    const int first = std::max(1, opt.steps - opt.window - 1);
    std::vector<double> s(opt.steps);
    for (int n = first; n <= opt.steps; ++n) {
      const double h = opt.start * std::ldexp(1.0, -n);
      s[n - 1] = s_star(point(ax, dx, h, p), point(by, dy, h, q), sg, seg).value;
    }
    // s* converges like a fractional power of h at the axes, so linear
    // Richardson is useless there. Aitken on the tail, median against the
    // occasional r-grid glitch.
    std::vector<double> ait;
    for (int k = std::max(2, opt.steps - opt.window); k < opt.steps; ++k) {
      const double d1 = s[k] - s[k - 1], d0 = s[k - 1] - s[k - 2];
      ait.push_back(d1 == d0 ? s[k] : s[k] - d1 * d1 / (d1 - d0));
    }
    std::nth_element(ait.begin(), ait.begin() + ait.size() / 2, ait.end());
    const double sigma = ait[ait.size() / 2];
    const LpVector x = unit_from_power(ax, p), y = unit_from_power(by, q);
    Operator2x2 lim = build_ts(x, y, sigma);
    NormOptions inner;
    inner.exec = Exec::Serial;
    lim = (1.0 / op_norm(lim, inner).norm) * lim;
    ClassifyOptions co;
    co.norm.exec = Exec::Serial;
    co.segment.exec = Exec::Serial;
    const Classification c = classify(lim, co);
    rep.limit_verdicts[i] = verdict_name(c.verdict);
    rep.limit_kinds[i] = kinds[kind];
    return is_extreme(c.verdict) ? 0.0 : 1.0;
  };
  kernels::map_index(n_sequences, one, bad.data(), opt.exec);
  for (double b : bad) rep.non_extreme_limits += b > 0;
  return rep;
}

}  // namespace clab
