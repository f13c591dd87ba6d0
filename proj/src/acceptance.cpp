#include "clab/acceptance.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "clab/rng.hpp"

namespace clab {

namespace {

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

LpVector e1(Exponent p) { return {1, 0, p}; }

// Independent long double evaluation of F_p(x, r) along f_p(x, r).
long double f_ld(const LpVector& x, long double r) {
  const long double p = x.exponent.value();
  const long double x1 = x.x1, x2 = x.x2;
  const long double a1 = -std::copysign(std::pow(std::fabs(x2), p - 1), x2);
  const long double a2 = std::copysign(std::pow(std::fabs(x1), p - 1), x1);
  return std::pow(std::fabs(x1 + r * a1), p) + std::pow(std::fabs(x2 + r * a2), p);
}

// Taylor coefficients c0..c4 of g at 0, central differences with one
// Richardson step.
template <class G>
std::array<long double, 5> fd_taylor(G&& g, long double h) {
  auto d = [&](long double s) {
    const long double gm2 = g(-2 * s), gm1 = g(-s), g0 = g(0), g1 = g(s), g2 = g(2 * s);
    return std::array<long double, 5>{g0, (g1 - gm1) / (2 * s), (g1 - 2 * g0 + gm1) / (s * s),
                                      (g2 - 2 * g1 + 2 * gm1 - gm2) / (2 * s * s * s),
                                      (g2 - 4 * g1 + 6 * g0 - 4 * gm1 + gm2) / (s * s * s * s)};
  };
  const auto a = d(h), b = d(h / 2);
  std::array<long double, 5> c{};
  const long double fact[5] = {1, 1, 2, 6, 24};
  for (int k = 0; k < 5; ++k) c[k] = ((4 * b[k] - a[k]) / 3) / fact[k];
  c[0] = a[0];
  return c;
}

double exponent_in(Stream& rng, double lo, double hi) {
  for (;;) {
    const double v = lo + (hi - lo) * rng.uniform();
    if (std::fabs(v - 2) > 0.05) return v;
  }
}

CriterionResult c1_case_one(const RunConfig& cfg) {
  CriterionResult r{1, "segment endpoint anchors", true, "", Json::object()};
  const SegmentOptions seg = segment_options(cfg);
  const Exponent two(2.0);
  Stream rng(cfg.seed, 1);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double t1 = 2 * std::numbers::pi * rng.uniform(), t2 = 2 * std::numbers::pi * rng.uniform();
    const LpVector x{std::cos(t1), std::sin(t1), two}, y{std::cos(t2), std::sin(t2), two};
    const double sp = s_star(x, y, Sign::Plus, seg).value, sm = s_star(x, y, Sign::Minus, seg).value;
    worst = std::max({worst, std::fabs(sp - 1), std::fabs(sm + 1)});
  }
  const bool a = worst <= 1e-8;

  const Exponent p3(3.0), q15(1.5);
  const SStar zp = s_star(e1(p3), e1(q15), Sign::Plus, seg), zm = s_star(e1(p3), e1(q15), Sign::Minus, seg);
  const Operator2x2 t0 = build_ts(e1(p3), e1(q15), 0.0);
  const OracleVerdict ov = extremality_probe(t0, oracle_options(cfg));
  const bool b = std::fabs(zp.value) <= 1e-6 && std::fabs(zm.value) <= 1e-6 &&
                 ov.verdict == OracleVerdict::ConsistentWithExtreme;

  const Exponent p15(1.5), q3(3.0);
  const SStar op = s_star(e1(p15), e1(q3), Sign::Plus, seg), om = s_star(e1(p15), e1(q3), Sign::Minus, seg);
  const bool inf_w = op.witness && !op.witness->is_finite() && om.witness && !om.witness->is_finite();
  const double id_err = max_abs_diff(build_ts(e1(p15), e1(q3), op.value), Operator2x2::identity(p15, q3));
  const bool c = std::fabs(op.value - 1) <= 1e-8 && std::fabs(om.value + 1) <= 1e-8 && inf_w && id_err <= 1e-12;

  r.pass = a && b && c;
  r.detail = fmt("p=q=2 max |s*-(+-1)| %.3g; (3,1.5) s*+ %.3g s*- %.3g", worst, zp.value, zm.value) +
             ", oracle " + oracle_name(ov.verdict) +
             fmt("; (1.5,3) s*+ %.12g, r=inf %g, |T1-I| %.3g", op.value, inf_w, id_err);
  r.data = Json{{"p2_max_err", worst},
                {"p3_q15_s_star", {zp.value, zm.value}},
                {"p3_q15_oracle", oracle_name(ov.verdict)},
                {"p15_q3", {{"s_star_plus", to_json(op)}, {"s_star_minus", to_json(om)}, {"identity_err", id_err}}}};
  return r;
}

CriterionResult c2_type_b_anchor(const RunConfig& cfg) {
  CriterionResult r{2, "region ii type (b) anchor", true, "", Json::object()};
  const Exponent p(2.0), q(4.0);
  const double h = std::pow(2.0, -0.25);
  const LpVector x = e1(p), y{h, h, q};
  const double s = std::sqrt(2.0) / std::sqrt(3.0);
  const Operator2x2 t = build_ts(x, y, s);
  const NormCertificate nc = op_norm(t, norm_options(cfg));
  const LpVector m = canonical_sign(nc.maximizers.front());
  const double merr = std::max(std::fabs(m.x1 - 1), std::fabs(m.x2));
  const Classification c = classify(t, classify_options(cfg));
  const OracleVerdict ov = extremality_probe(t, oracle_options(cfg));
  r.pass = std::fabs(nc.norm - 1) <= 1e-7 && nc.maximizers.size() == 1 && !nc.independent_pair &&
           merr <= 1e-6 && c.verdict == Verdict::ExtremeTypeB &&
           ov.verdict == OracleVerdict::ConsistentWithExtreme;
  r.detail = fmt("norm-1 %.3g, maximizers %g, |max - e1| %.3g, ", nc.norm - 1,
                 static_cast<double>(nc.maximizers.size()), merr) +
             "classify " + verdict_name(c.verdict) + ", oracle " + oracle_name(ov.verdict);
  r.data = Json{{"operator", to_json(t)},
                {"norm", to_json(nc)},
                {"classification", to_json(c)},
                {"oracle", to_json(ov)}};
  return r;
}

CriterionResult c3_rank_one(const RunConfig& cfg) {
  CriterionResult r{3, "region v rank-one anchors", true, "", Json::object()};
  const Exponent p(3.0), q(1.5);
  const LpVector x = unit_from_first(0.7, p);
  const LpVector y = unit_from_first(0.6, q);
  const Operator2x2 t = tensor(duality_map(x), y, p, q);
  const Classification c = classify(t, classify_options(cfg));
  const bool cert_ok = c.certificate && midpoint_check(t, c.certificate->a, c.certificate->b, 1e-8);

  const Operator2x2 t1 = tensor(duality_map(x), e1(q), p, q);
  const Classification c1 = classify(t1, classify_options(cfg));
  const OracleVerdict ov = extremality_probe(t1, oracle_options(cfg));
  r.pass = c.verdict == Verdict::NotExtreme && cert_ok && c1.verdict == Verdict::ExtremeTypeB &&
           ov.verdict == OracleVerdict::ConsistentWithExtreme;
  r.detail = std::string("interior y: ") + verdict_name(c.verdict) +
             (cert_ok ? " with verified midpoint certificate" : " without a valid certificate") +
             "; y = e1: " + verdict_name(c1.verdict) + ", oracle " + oracle_name(ov.verdict);
  r.data = Json{{"interior", to_json(c)}, {"axis", to_json(c1)}, {"axis_oracle", to_json(ov)}};
  return r;
}

CriterionResult c4_taylor(const RunConfig& cfg) {
  CriterionResult r{4, "Taylor closed forms", true, "", Json::object()};
  Stream rng(cfg.seed, 4);
  double worst = 0;
  Json worst_case;
  for (int i = 0; i < 100; ++i) {
    const Exponent p(exponent_in(rng, 1.2, 6.0)), q(exponent_in(rng, 1.2, 6.0));
    const LpVector x = unit_from_power(0.1 + 0.8 * rng.uniform(), p);
    const TaylorCoeffs tf = taylor_F(x), th = taylor_H(x, q);
    const auto ff = fd_taylor([&](long double s) { return f_ld(x, s); }, 0.005L);
    const long double qp = static_cast<long double>(q.value()) / p.value();
    const auto fh = fd_taylor([&](long double s) { return std::pow(f_ld(x, s), qp); }, 0.005L);
    auto err = [](const TaylorCoeffs& a, const std::array<long double, 5>& b) {
      const double got[5] = {a.c0, a.c1, a.c2, a.c3, a.c4};
      const double scale = static_cast<double>(std::fabs(b[2]));
      double e = 0;
      for (int k = 0; k < 5; ++k) {
        // c1 vanishes and c3 can be tiny: measure against c2 as well
        const double den = std::max(static_cast<double>(std::fabs(b[k])), scale);
        e = std::max(e, std::fabs(got[k] - static_cast<double>(b[k])) / den);
      }
      return e;
    };
    const double e = std::max(err(tf, ff), err(th, fh));
    if (e > worst) {
      worst = e;
      worst_case = Json{{"p", p.value()}, {"q", q.value()}, {"x", to_json(x)}, {"rel_err", e}};
    }
  }
  r.pass = worst <= 1e-5;
  r.detail = fmt("100 draws, max relative error %.3g (bound 1e-5)", worst);
  r.data = Json{{"draws", 100}, {"max_rel_err", worst}, {"worst", worst_case}};
  return r;
}

CriterionResult c5_inequalities(const RunConfig& cfg) {
  CriterionResult r{5, "inequality sweeps", true, "", Json::object()};
  const std::vector<double> rg = margin_grid(100.0, cfg.margin_grid, 0);
  const double ps[] = {1.2, 1.5, 2, 3, 6};

  double l1_min = INFINITY, l1_off_min = INFINITY;
  for (double pv : ps)
    for (double qv : ps) {
      if (pv > qv) continue;
      const Exponent p(pv), q(qv);
      const SweepResult sw = sweep(rg, [&](double t) { return lemma1_margin(p, q, t).margin; });
      l1_min = std::min(l1_min, sw.min_margin);
      if (pv < qv)
        for (std::size_t i = 0; i < rg.size(); ++i)
          if (std::fabs(rg[i]) >= 0.1) l1_off_min = std::min(l1_off_min, sw.margins[i]);
    }

  double cor_min = INFINITY;
  for (int i = 0; i < 10; ++i)
    for (int j = i + 1; j <= 10; ++j) {
      const Exponent p(1.1 + 0.09 * i), q(1.1 + 0.09 * j);
      cor_min = std::min(cor_min, sweep(rg, [&](double t) { return corollary_margin(p, q, t).margin; }).min_margin);
    }

  Stream rng(cfg.seed, 5);
  double l3_min = INFINITY, id_worst = 0;
  Json draws = Json::array();
  for (int i = 0; i < 10; ++i) {
    const double pv = 1.05 + 0.9 * rng.uniform();
    const double qv = pv + (1.95 - pv) * (0.05 + 0.9 * rng.uniform());
    const Exponent p(pv), q(qv);
    const double x1p = 0.5 + (1 / qv - 0.5) * rng.uniform();
    const double m = sweep(rg, [&](double t) { return lemma3_margin(p, q, x1p, t).margin; }).min_margin;
    l3_min = std::min(l3_min, m);
    const LpVector x = unit_from_power(x1p, p);
    const LpVector y = solve_e12(p, q, x);
    // y from solve_e12 pairs with s > 0; the minus frame cannot satisfy the y-equation
    const SubstitutionFrame f = substitution_frame(p, q, x, y, Sign::Plus);
    id_worst = std::max({id_worst, f.identity1_residual, f.identity2_residual});
    draws.push_back({{"p", pv}, {"q", qv}, {"x1p", x1p}, {"min_margin", m}});
  }

  r.pass = l1_min >= 0 && l1_off_min > 1e-6 && cor_min >= 0 && l3_min >= -1e-12 && id_worst <= 1e-12;
  r.detail = fmt("lemma1 min %.3g, off-zero min %.3g, ", l1_min, l1_off_min) +
             fmt("corollary min %.3g, lemma3 min %.3g, ", cor_min, l3_min) +
             fmt("frame identities %.3g", id_worst);
  r.data = Json{{"lemma1_min", l1_min},
                {"lemma1_min_abs_r_ge_0_1", l1_off_min},
                {"corollary_min", cor_min},
                {"lemma3_min", l3_min},
                {"lemma3_draws", draws},
                {"frame_identity_max_residual", id_worst}};
  return r;
}

CriterionResult c6_solve_e12(const RunConfig& cfg) {
  CriterionResult r{6, "solve_e12", true, "", Json::object()};
  Stream rng(cfg.seed, 6);
  double eq_worst = 0, res_worst = 0;
  for (int i = 0; i < 50; ++i) {
    const Exponent p(exponent_in(rng, 1.2, 6.0));
    const LpVector x = unit_from_power(0.05 + 0.9 * rng.uniform(), p);
    const LpVector y = solve_e12(p, p, x);
    eq_worst = std::max({eq_worst, std::fabs(y.x1 - x.x1), std::fabs(y.x2 - x.x2)});
  }
  for (int i = 0; i < 50; ++i) {
    const double pv = 1.05 + 0.85 * rng.uniform();
    const Exponent p(pv), q(pv + (1.98 - pv) * (0.02 + 0.96 * rng.uniform()));
    const Interval iv = e16_e17_bounds(p, q);
    const LpVector x = unit_from_power(iv.lo + (iv.hi - iv.lo) * rng.uniform(), p);
    res_worst = std::max(res_worst, e12_residual(p, q, x, solve_e12(p, q, x)));
  }
  r.pass = eq_worst <= 1e-12 && res_worst <= 1e-10;
  r.detail = fmt("p=q max |y-x| %.3g, region b max residual %.3g", eq_worst, res_worst);
  r.data = Json{{"p_eq_q_max_err", eq_worst}, {"region_b_max_residual", res_worst}};
  return r;
}

CriterionResult c7_agreement(const RunConfig& cfg) {
  CriterionResult r{7, "classifier/oracle agreement", true, "", Json::object()};
  Stream rng(cfg.seed, 7);
  const ClassifyOptions co = classify_options(cfg);
  const OracleOptions oo = oracle_options(cfg);
  const SegmentOptions seg = segment_options(cfg);
  int contradictions = 0, errors = 0, unknown = 0;
  Json per_region = Json::object();
  Json bad = Json::array();
  const char* names[] = {"i", "ii", "iii", "iv", "v"};
  for (int reg = 0; reg < 5; ++reg) {
    int n_ext = 0, n_not = 0;
    for (int k = 0; k < 40; ++k) {
      double pv = 2, qv = 2;
      if (reg == 1) qv = exponent_in(rng, 1.2, 5.0);
      if (reg == 2) pv = exponent_in(rng, 1.2, 5.0);
      if (reg == 3) pv = qv = exponent_in(rng, 1.2, 5.0);
      if (reg == 4) {
        pv = 2.2 + 2.8 * rng.uniform();
        qv = 1.2 + 0.6 * rng.uniform();
      }
      const Exponent p(pv), q(qv);
      const LpVector x = unit_from_power(rng.arcsine(), p), y = unit_from_power(rng.arcsine(), q);
      const LpVector xs{rng.sign() * x.x1, rng.sign() * x.x2, p}, ys{rng.sign() * y.x1, rng.sign() * y.x2, q};
      Operator2x2 t;
      const int kind = k % 3;
      try {
        if (kind == 0) {
          t = {rng.normal(), rng.normal(), rng.normal(), rng.normal(), p, q};
          t = (1.0 / op_norm(t, co.norm).norm) * t;
        } else if (kind == 1) {
          t = generate_extreme(xs, ys, rng.sign() > 0 ? Sign::Plus : Sign::Minus, seg);
        } else {
          const double hi = s_star(xs, ys, Sign::Plus, seg).value;
          const double lo = s_star(xs, ys, Sign::Minus, seg).value;
          t = build_ts(xs, ys, lo + (hi - lo) * (0.05 + 0.9 * rng.uniform()));
        }
        const Classification c = classify(t, co);
        const OracleVerdict o = extremality_probe(t, oo);
        const bool oracle_not = o.verdict == OracleVerdict::NotExtreme;
        const bool contra = (oracle_not && c.verdict != Verdict::NotExtreme) ||
                            (is_extreme(c.verdict) && oracle_not);
        unknown += c.verdict == Verdict::Unknown;
        n_ext += is_extreme(c.verdict);
        n_not += c.verdict == Verdict::NotExtreme;
        if (contra) {
          ++contradictions;
          bad.push_back({{"operator", to_json(t)}, {"classify", verdict_name(c.verdict)}, {"oracle", oracle_name(o.verdict)}});
        }
      } catch (const std::exception& e) {
        ++errors;
        bad.push_back({{"operator", to_json(t)}, {"error", e.what()}});
      }
    }
    per_region[names[reg]] = {{"extreme", n_ext}, {"not_extreme", n_not}};
  }
  r.pass = contradictions == 0 && errors == 0;
  r.detail = fmt("200 operators, %g contradictions, %g inconsistency errors, %g unknown",
                 contradictions, errors, unknown);
  r.data = Json{{"operators", 200},
                {"contradictions", contradictions},
                {"errors", errors},
                {"unknown", unknown},
                {"per_region", per_region},
                {"failures", bad}};
  return r;
}

CriterionResult c8_closedness(const RunConfig& cfg) {
  CriterionResult r{8, "closedness", true, "", Json::object()};
  ClosednessOptions o;
  o.seed = cfg.seed;
  Json reps = Json::array();
  int total = 0;
  for (auto [pv, qv] : {std::pair{2.0, 3.0}, {3.0, 2.0}, {3.0, 1.5}}) {
    const ClosednessReport rep = closedness_check(Exponent(pv), Exponent(qv), 50, o);
    total += rep.non_extreme_limits;
    reps.push_back(to_json(rep));
    r.detail += std::string(r.detail.empty() ? "" : ", ") + region_name(rep.region) +
                fmt(" (%g,%g): %g non-extreme", pv, qv, rep.non_extreme_limits);
  }
  r.pass = total == 0;
  r.data = Json{{"reports", reps}};
  return r;
}

CriterionResult c9_mip(const RunConfig& cfg) {
  CriterionResult r{9, "MIP gap evidence", true, "", Json::object()};
  ProbeOptions o = probe_options(cfg);
  o.net_points = 2000;
  o.net_radius = 0.05;
  o.verify_fraction = 0.1;
  Json reps = Json::array();
  bool ok = true;
  for (auto [pv, qv] : {std::pair{3.0, 1.5}, {2.0, 4.0}, {4.0, 3.0}}) {
    const Exponent p(pv), q(qv);
    const ExponentPair d = dual_space(p, q);
    const ProbeReport rep = density_probe(p, q, unit_from_power(0.5, p), unit_from_power(0.5, d.q), o);
    ok = ok && rep.verdict == ProbeVerdict::GapEvidence && rep.net_extreme_hits == 0 &&
         rep.net_points >= 2000 && rep.sampled_min_distance >= 1e-2;
    reps.push_back(to_json(rep, false));
    r.detail += std::string(r.detail.empty() ? "" : "; ") + fmt("(%g,%g) ", pv, qv) +
                probe_name(rep.verdict) +
                fmt(" min dist %.4g, hits %g", rep.sampled_min_distance, rep.net_extreme_hits);
  }
  r.pass = ok;
  r.data = Json{{"reports", reps}};
  return r;
}

}  // namespace

std::vector<int> all_criteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 9}; }

CriterionResult run_criterion(int id, const RunConfig& cfg) {
  try {
    switch (id) {
      case 1: return c1_case_one(cfg);
      case 2: return c2_type_b_anchor(cfg);
      case 3: return c3_rank_one(cfg);
      case 4: return c4_taylor(cfg);
      case 5: return c5_inequalities(cfg);
      case 6: return c6_solve_e12(cfg);
      case 7: return c7_agreement(cfg);
      case 8: return c8_closedness(cfg);
      case 9: return c9_mip(cfg);
      default: throw DomainError("no criterion " + std::to_string(id));
    }
  } catch (const DomainError& e) {
    if (id < 1 || id > 9) throw;
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), Json::object()};
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), Json::object()};
  }
}

Json selftest_report(const RunConfig& cfg, const std::vector<int>& ids,
                     std::vector<CriterionResult>* results) {
  Json crit = Json::array();
  int passed = 0;
  for (int id : ids) {
    CriterionResult r = run_criterion(id, cfg);
    passed += r.pass;
    crit.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
    if (results) results->push_back(std::move(r));
  }
  return Json{{"report", "selftest"},
              {"config", to_json(cfg)},
              {"passed", passed},
              {"total", static_cast<int>(ids.size())},
              {"criteria", crit}};
}

CriterionResult determinism_criterion(const RunConfig& cfg, const std::vector<int>& ids,
                                      const std::string& first_report) {
  const Exec saved = default_exec();
  set_default_exec(Exec::Serial);
  std::string again;
  try {
    again = emit_json(selftest_report(cfg, ids));
  } catch (...) {
    set_default_exec(saved);
    throw;
  }
  set_default_exec(saved);
  const bool same = again == first_report;
  CriterionResult r{10, "determinism", same, "", Json::object()};
  r.detail = same ? fmt("second selftest report byte-identical (%g bytes, rerun with serial kernels)",
                        static_cast<double>(again.size()))
                  : "selftest reports differ between runs";
  return r;
}

std::string result_line(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail;
}

}  // namespace clab
