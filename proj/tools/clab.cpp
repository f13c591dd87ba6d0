#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clab/acceptance.hpp"
#include "clab/report.hpp"

using namespace clab;

namespace {

constexpr int kOk = 0, kSelftestFailed = 1, kUsage = 2, kMarginViolation = 3, kInconsistent = 4;
constexpr double kViolation = -1e-12;

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    std::string tok = s.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
    while (!tok.empty() && tok.back() == ' ') tok.pop_back();
    double v = 0;
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (tok.empty() || ec != std::errc() || ptr != end)
      throw DomainError(std::string("malformed ") + what + ": '" + s + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_fixed(const std::string& s, std::size_t n, const char* what) {
  auto v = parse_list(s, what);
  if (v.size() != n)
    throw DomainError(std::string(what) + " needs " + std::to_string(n) + " comma-separated numbers");
  return v;
}

// A vector given either as "x1,x2" (must be unit) or as the first coordinate.
LpVector parse_vector(const std::string& s, Exponent e, const char* what) {
  const auto v = parse_list(s, what);
  if (v.size() == 1) {
    if (!(v[0] >= -1 && v[0] <= 1)) throw DomainError(std::string(what) + ": first coordinate must lie in [-1, 1]");
    LpVector u = unit_from_first(std::fabs(v[0]), e);
    u.x1 = v[0];
    return u;
  }
  if (v.size() != 2) throw DomainError(std::string(what) + " needs one or two numbers");
  LpVector u{v[0], v[1], e};
  if (!u.is_unit(1e-10)) throw DomainError(std::string(what) + " is not a unit vector of l^p");
  return u;
}

struct Global {
  std::string config_path;
  std::map<std::string, std::string> flags;  // config key -> raw value
  RunConfig cfg;
  bool format_set = false;
};

void emit(const Global& g, const std::string& text) {
  if (g.cfg.output_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.cfg.output_path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + g.cfg.output_path);
  f << text;
}

Json envelope(const Global& g, const char* cmd) {
  return Json{{"command", cmd}, {"config", to_json(g.cfg)}};
}

bool csv(const Global& g) { return g.cfg.output_format == OutputFormat::Csv; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme contractions between two-dimensional l^p spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--config", g.config_path, "key = value file");
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  const Flag flags[] = {
      {"--tol-norm", "tol_norm", "accepted |‖T‖ - 1|"},
      {"--tol-attain", "tol_attain", "norm-attainment merge tolerance"},
      {"--tol-oracle", "tol_oracle", "oracle excess tolerance (quad precision)"},
      {"--eps-min", "eps_min", "smallest oracle perturbation"},
      {"--gap-threshold", "gap_threshold", "MIP distance threshold"},
      {"--sphere-scan", "sphere_scan", "unit-sphere scan points"},
      {"--r-grid-per-decade", "r_grid_per_decade", "segment r-grid density"},
      {"--margin-grid", "margin_grid", "inequality grid points"},
      {"--seed", "seed", "64-bit seed"},
      {"--format", "output_format", "json or csv"},
      {"--output", "output_path", "output file (default stdout)"},
  };
  for (const Flag& f : flags) app.add_option(f.name, g.flags[f.key], f.help);

  double p = 2, q = 2;
  std::string m, xs, ys;
  auto exps = [&](CLI::App* sc) {
    sc->add_option("--p", p, "domain exponent")->required();
    sc->add_option("--q", q, "codomain exponent")->required();
  };

  auto* norm = app.add_subcommand("norm", "operator norm certificate");
  exps(norm);
  norm->add_option("--m", m, "a11,a12,a21,a22")->required();

  bool with_oracle = false;
  auto* cls = app.add_subcommand("classify", "extremality verdict");
  exps(cls);
  cls->add_option("--m", m, "a11,a12,a21,a22")->required();
  cls->add_flag("--oracle", with_oracle, "cross-check with the perturbation oracle");

  auto* sst = app.add_subcommand("sstar", "segment endpoints s*+- for a pair (x, y)");
  exps(sst);
  sst->add_option("--x", xs, "x1,x2 or x1")->required();
  sst->add_option("--y", ys, "y1,y2 or y1")->required();

  std::string ineq_name, sign_s = "+";
  double r_max = 100, x1p = -1;
  auto* ineq = app.add_subcommand("ineq", "margin sweep of a scalar inequality");
  ineq->add_option("name", ineq_name, "lemma1 | e18 | lemma3 | corollary")
      ->required()
      ->check(CLI::IsMember({"lemma1", "e18", "lemma3", "corollary"}));
  exps(ineq);
  ineq->add_option("--r-max", r_max, "grid half-width");
  ineq->add_option("--x", xs, "e18: x1,x2 or x1 (default symmetric)");
  ineq->add_option("--y", ys, "e18: y1,y2 or y1 (default from the y-equation)");
  ineq->add_option("--sign", sign_s, "e18: + or -")->check(CLI::IsMember({"+", "-"}));
  ineq->add_option("--x1p", x1p, "lemma3: x1^p (default 1/q)");

  int n_samples = 200, net_points = 2000;
  double net_radius = 0.05, verify_fraction = 0;
  auto* mip = app.add_subcommand("mip", "density probe near a rank-one target");
  exps(mip);
  mip->add_option("--x", xs, "x in l^p: x1,x2 or x1")->required();
  mip->add_option("--y", ys, "y in l^{q'}: y1,y2 or y1")->required();
  mip->add_option("--n-samples", n_samples, "random segment endpoints");
  mip->add_option("--net-points", net_points, "net size");
  mip->add_option("--net-radius", net_radius, "net radius in operator norm");
  mip->add_option("--verify-fraction", verify_fraction, "oracle subsample of the extremes");

  std::string s_list = "-1,-0.5,0,0.5,1";
  auto* clo = app.add_subcommand("closure", "distances from diag(1, s) to sampled extremes, p = q");
  clo->add_option("--p", p, "exponent")->required();
  clo->add_option("--s", s_list, "comma-separated s values");
  clo->add_option("--n-samples", n_samples, "random segment endpoints");

  int sequences = 50;
  auto* cdn = app.add_subcommand("closedness", "limits of convergent sequences of extremes");
  exps(cdn);
  cdn->add_option("--sequences", sequences, "number of sequences");

  std::string only;
  bool determinism = false;
  auto* st = app.add_subcommand("selftest", "acceptance suite");
  st->add_option("--only", only, "comma-separated criterion ids (1..9)");
  st->add_flag("--determinism", determinism, "rerun serially and compare reports (criterion 10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    KeyValues cli;
    for (const auto& [k, v] : g.flags)
      if (!v.empty()) cli[k] = v;
    const KeyValues file = g.config_path.empty() ? KeyValues{} : read_config_file(g.config_path);
    const KeyValues env = config_from_env();
    g.cfg = resolve_config(file, env, cli);
    g.format_set = cli.count("output_format") || env.count("output_format") || file.count("output_format");

    if (*norm) {
      const auto e = parse_fixed(m, 4, "matrix");
      const Operator2x2 t{e[0], e[1], e[2], e[3], Exponent(p), Exponent(q)};
      const NormCertificate c = op_norm(t, norm_options(g.cfg));
      if (csv(g)) {
        CsvTable tab({"index", "norm", "x1", "x2", "angle", "independent_pair"});
        for (std::size_t i = 0; i < c.maximizers.size(); ++i)
          tab.add({std::to_string(i), fmt17(c.norm), fmt17(c.maximizers[i].x1), fmt17(c.maximizers[i].x2),
                   fmt17(c.angles[i]), c.independent_pair ? "1" : "0"});
        emit(g, tab.text());
      } else {
        Json j = envelope(g, "norm");
        j["operator"] = to_json(t);
        j["certificate"] = to_json(c);
        emit(g, emit_json(j));
      }
      return kOk;
    }

    if (*cls) {
      const auto e = parse_fixed(m, 4, "matrix");
      const Operator2x2 t{e[0], e[1], e[2], e[3], Exponent(p), Exponent(q)};
      ClassifyOptions co = classify_options(g.cfg);
      co.always_segment = true;
      const Classification c = classify(t, co);
      std::optional<OracleVerdict> ov;
      bool contradiction = false;
      if (with_oracle) {
        ov = extremality_probe(t, oracle_options(g.cfg));
        const bool oracle_not = ov->verdict == OracleVerdict::NotExtreme;
        contradiction = oracle_not && c.verdict != Verdict::NotExtreme;
      }
      if (csv(g)) {
        CsvTable tab({"verdict", "region", "s", "s_star_plus", "s_star_minus", "oracle"});
        auto o = [](const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); };
        tab.add({verdict_name(c.verdict), region_name(c.region), o(c.s), o(c.s_star_plus), o(c.s_star_minus),
                 ov ? oracle_name(ov->verdict) : ""});
        emit(g, tab.text());
      } else {
        Json j = envelope(g, "classify");
        j["operator"] = to_json(t);
        j["classification"] = to_json(c);
        j["oracle"] = ov ? to_json(*ov) : Json(nullptr);
        j["consistent"] = !contradiction;
        emit(g, emit_json(j));
      }
      if (contradiction) {
        std::cerr << "classify and oracle disagree\n";
        return kInconsistent;
      }
      return kOk;
    }

    if (*sst) {
      const Exponent pe(p), qe(q);
      const LpVector x = parse_vector(xs, pe, "--x"), y = parse_vector(ys, qe, "--y");
      const SegmentData d = segment_ixy(x, y, segment_options(g.cfg));
      if (csv(g)) {
        CsvTable tab({"sign", "s_star", "witness_r", "s_star_star"});
        auto w = [](const std::optional<ExtReal>& r) { return r ? r->to_string() : std::string(); };
        tab.add({"+", fmt17(d.s_star_plus), w(d.witness_plus), d.s_ss_plus.to_string()});
        tab.add({"-", fmt17(d.s_star_minus), w(d.witness_minus), d.s_ss_minus.to_string()});
        emit(g, tab.text());
      } else {
        Json j = envelope(g, "sstar");
        j["segment"] = to_json(d);
        emit(g, emit_json(j));
      }
      if (!d.s_ss_consistent) {
        std::cerr << "closed-form and numeric s** disagree\n";
        return kInconsistent;
      }
      return kOk;
    }

    if (*ineq) {
      const Exponent pe(p), qe(q);
      const std::vector<double> grid = margin_grid(r_max, g.cfg.margin_grid, 0);
      std::function<Margin(double)> fn;
      if (ineq_name == "lemma1") {
        fn = [&](double r) { return lemma1_margin(pe, qe, r); };
      } else if (ineq_name == "corollary") {
        fn = [&](double t) { return corollary_margin(pe, qe, t); };
      } else if (ineq_name == "lemma3") {
        const double a = x1p < 0 ? 1 / q : x1p;
        fn = [&, a](double r) { return lemma3_margin(pe, qe, a, r); };
      } else {
        const LpVector x = xs.empty() ? unit_from_power(0.5, pe) : parse_vector(xs, pe, "--x");
        const LpVector y = ys.empty() ? solve_e12(pe, qe, x) : parse_vector(ys, qe, "--y");
        const Sign sg = sign_s == "-" ? Sign::Minus : Sign::Plus;
        fn = [&, x, y, sg](double r) { return e18_margin(pe, qe, x, y, sg, r); };
      }
      std::vector<Margin> rows;
      rows.reserve(grid.size());
      for (double r : grid) rows.push_back(fn(r));
      double worst = rows.front().margin, at = grid.front();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].margin < worst) worst = rows[i].margin, at = grid[i];
      const char* var = ineq_name == "corollary" ? "t" : "r";
      if (csv(g) || !g.format_set) {
        CsvTable tab({var, "margin", "lhs", "rhs"});
        for (std::size_t i = 0; i < rows.size(); ++i)
          tab.add({fmt17(grid[i]), fmt17(rows[i].margin), fmt17(rows[i].lhs), fmt17(rows[i].rhs)});
        emit(g, tab.text());
      } else {
        Json j = envelope(g, "ineq");
        j["inequality"] = ineq_name;
        j["p"] = p;
        j["q"] = q;
        j["min_margin"] = worst;
        j["argmin"] = at;
        Json r = Json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) r.push_back({grid[i], rows[i].margin});
        j["rows"] = r;
        emit(g, emit_json(j));
      }
      if (worst < kViolation) {
        std::cerr << "negative margin " << fmt17(worst) << " at " << var << " = " << fmt17(at) << "\n";
        return kMarginViolation;
      }
      return kOk;
    }

    if (*mip) {
      const Exponent pe(p), qe(q);
      const ExponentPair d = dual_space(pe, qe);
      const LpVector x = parse_vector(xs, pe, "--x"), y = parse_vector(ys, d.q, "--y");
      ProbeOptions o = probe_options(g.cfg);
      o.n_samples = n_samples;
      o.net_points = net_points;
      o.net_radius = net_radius;
      o.verify_fraction = verify_fraction;
      const ProbeReport rep = density_probe(pe, qe, x, y, o);
      if (csv(g)) {
        CsvTable tab({"index", "distance"});
        for (std::size_t i = 0; i < rep.distances.size(); ++i)
          tab.add({std::to_string(i), fmt17(rep.distances[i])});
        emit(g, tab.text());
      } else {
        Json j = envelope(g, "mip");
        j["mip_verdict"] = mip_name(mip_verdict(pe, qe));
        j["probe"] = to_json(rep);
        emit(g, emit_json(j));
      }
      return kOk;
    }

    if (*clo) {
      ProbeOptions o = probe_options(g.cfg);
      o.n_samples = n_samples;
      const ClosureReport rep = closure_probe(Exponent(p), parse_list(s_list, "--s"), o);
      if (csv(g)) {
        CsvTable tab({"s", "verdict", "sampled_min_distance", "sequence_approaches"});
        for (const ClosureRow& r : rep.rows)
          tab.add({fmt17(r.s), verdict_name(r.verdict), fmt17(r.sampled_min_distance),
                   r.sequence_approaches ? "1" : "0"});
        emit(g, tab.text());
      } else {
        Json j = envelope(g, "closure");
        j["closure"] = to_json(rep);
        emit(g, emit_json(j));
      }
      return kOk;
    }

    if (*cdn) {
      ClosednessOptions o;
      o.seed = g.cfg.seed;
      const ClosednessReport rep = closedness_check(Exponent(p), Exponent(q), sequences, o);
      if (csv(g)) {
        CsvTable tab({"sequence", "limit_kind", "limit_verdict"});
        for (int i = 0; i < rep.sequences; ++i)
          tab.add({std::to_string(i), rep.limit_kinds[i], rep.limit_verdicts[i]});
        emit(g, tab.text());
      } else {
        Json j = envelope(g, "closedness");
        j["closedness"] = to_json(rep);
        emit(g, emit_json(j));
      }
      return kOk;
    }

    if (*st) {
      std::vector<int> ids = all_criteria();
      if (!only.empty()) {
        ids.clear();
        for (double v : parse_list(only, "--only")) {
          if (v != std::floor(v) || v < 1 || v > 9) throw DomainError("--only takes ids 1..9");
          ids.push_back(static_cast<int>(v));
        }
      }
      std::vector<CriterionResult> results;
      const std::string report = emit_json(selftest_report(g.cfg, ids, &results));
      bool ok = true;
      for (const auto& r : results) {
        std::cerr << result_line(r) << "\n";
        ok = ok && r.pass;
      }
      if (determinism) {
        const CriterionResult r = determinism_criterion(g.cfg, ids, report);
        std::cerr << result_line(r) << "\n";
        ok = ok && r.pass;
      }
      emit(g, report);
      return ok ? kOk : kSelftestFailed;
    }
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kInconsistent;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
