#include "clab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace clab {

namespace {

void emit(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * depth + 2, ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // numbers-only arrays stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_number(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(e, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? fmt17(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

Json opt_num(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string fmt17(double v) {
  if (v == 0) v = 0;  // drops the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string emit_json(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

void CsvTable::add(const std::vector<std::string>& row) {
  if (row.size() != header_.size()) throw DomainError("csv: row width does not match header");
  rows_.push_back(row);
}

std::string CsvTable::text() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += r[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

Json to_json(const ExtReal& v) {
  if (v.is_finite()) return v.value();
  return v.is_pos_inf() ? "inf" : "-inf";
}

Json to_json(const LpVector& v) {
  return Json{{"exponent", v.exponent.value()}, {"coords", {v.x1, v.x2}}};
}

Json to_json(const Operator2x2& t) {
  return Json{{"p", t.domain.value()},
              {"q", t.codomain.value()},
              {"matrix", {t.a11, t.a12, t.a21, t.a22}}};
}

Json to_json(const NormCertificate& c) {
  Json m = Json::array();
  for (const LpVector& x : c.maximizers) m.push_back({x.x1, x.x2});
  return Json{{"norm", c.norm},
              {"independent_pair", c.independent_pair},
              {"maximizers", m},
              {"angles", c.angles}};
}

Json to_json(const SStar& s) {
  return Json{{"value", s.value}, {"witness_r", s.witness ? to_json(*s.witness) : Json(nullptr)}};
}

Json to_json(const SegmentData& d) {
  auto w = [](const std::optional<ExtReal>& r) { return r ? to_json(*r) : Json(nullptr); };
  return Json{{"x", to_json(d.x)},
              {"y", to_json(d.y)},
              {"s_star_plus", d.s_star_plus},
              {"s_star_minus", d.s_star_minus},
              {"witness_plus", w(d.witness_plus)},
              {"witness_minus", w(d.witness_minus)},
              {"s_star_star_plus", to_json(d.s_ss_plus)},
              {"s_star_star_minus", to_json(d.s_ss_minus)},
              {"s_star_star_plus_numeric", to_json(d.s_ss_plus_numeric)},
              {"s_star_star_minus_numeric", to_json(d.s_ss_minus_numeric)},
              {"s_star_star_consistent", d.s_ss_consistent}};
}

Json to_json(const Classification& c) {
  Json j{{"verdict", verdict_name(c.verdict)},
         {"region", region_name(c.region)},
         {"detail", c.detail},
         {"independent_pair", c.independent_pair}};
  j["decomposition"] = c.x ? Json{{"x", to_json(*c.x)}, {"y", to_json(*c.y)}, {"s", opt_num(c.s)}}
                           : Json(nullptr);
  j["s_star_plus"] = opt_num(c.s_star_plus);
  j["s_star_minus"] = opt_num(c.s_star_minus);
  if (c.certificate)
    j["midpoint_certificate"] = Json{{"delta", c.certificate->delta},
                                     {"a", to_json(c.certificate->a)},
                                     {"b", to_json(c.certificate->b)}};
  else
    j["midpoint_certificate"] = nullptr;
  return j;
}

Json to_json(const OracleVerdict& v) {
  return Json{{"verdict", oracle_name(v.verdict)},
              {"direction_index", v.direction_index},
              {"epsilon", v.epsilon},
              {"witness", v.witness ? to_json(*v.witness) : Json(nullptr)},
              {"directions_scanned", v.directions_scanned}};
}

Json to_json(const Margin& m) {
  Json p = Json::object();
  for (const auto& [k, v] : m.params) p[k] = v;
  return Json{{"lhs", m.lhs}, {"rhs", m.rhs}, {"margin", m.margin}, {"params", p}};
}

Json to_json(const ProbeReport& r, bool with_distances) {
  Json j{{"p", r.p.value()},
         {"q", r.q.value()},
         {"dual_q", r.dual_q.value()},
         {"target", to_json(r.target)},
         {"verdict", probe_name(r.verdict)},
         {"sampled_min_distance", r.sampled_min_distance},
         {"samples", r.samples},
         {"net_radius", r.net_radius},
         {"net_points", r.net_points},
         {"net_extreme_hits", r.net_extreme_hits},
         {"net_unknown", r.net_unknown},
         {"norm_failures", r.norm_failures},
         {"oracle_checked", r.oracle_checked},
         {"oracle_failures", r.oracle_failures}};
  if (with_distances) j["distances"] = r.distances;
  return j;
}

Json to_json(const ClosureReport& r) {
  Json rows = Json::array();
  for (const ClosureRow& row : r.rows)
    rows.push_back({{"s", row.s},
                    {"verdict", verdict_name(row.verdict)},
                    {"sampled_min_distance", row.sampled_min_distance},
                    {"sequence_distances", row.sequence_distances},
                    {"sequence_approaches", row.sequence_approaches}});
  return Json{{"p", r.p.value()}, {"rows", rows}};
}

Json to_json(const ClosednessReport& r) {
  return Json{{"p", r.p.value()},
              {"q", r.q.value()},
              {"region", region_name(r.region)},
              {"sequences", r.sequences},
              {"non_extreme_limits", r.non_extreme_limits},
              {"limit_kinds", r.limit_kinds},
              {"limit_verdicts", r.limit_verdicts}};
}

Json to_json(const RunConfig& c) {
  return Json{{"tol_norm", c.tol_norm},
              {"tol_attain", c.tol_attain},
              {"tol_oracle", c.tol_oracle},
              {"eps_min", c.eps_min},
              {"gap_threshold", c.gap_threshold},
              {"sphere_scan", c.sphere_scan},
              {"r_grid_per_decade", c.r_grid_per_decade},
              {"margin_grid", c.margin_grid},
              {"seed", c.seed},
              {"output_format", format_name(c.output_format)}};
}

}  // namespace clab
