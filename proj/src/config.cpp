#include "clab/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace clab {

namespace {

constexpr std::array<const char*, 11> kKeys = {
    "tol_norm",    "tol_attain",        "tol_oracle",  "eps_min", "gap_threshold", "sphere_scan",
    "r_grid_per_decade", "margin_grid", "seed",        "output_format", "output_path"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw DomainError("config: bad value for " + key + ": '" + v + "'");
  return out;
}

void apply(RunConfig& c, const KeyValues& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "tol_norm") c.tol_norm = parse_number<double>(k, v);
    else if (k == "tol_attain") c.tol_attain = parse_number<double>(k, v);
    else if (k == "tol_oracle") c.tol_oracle = parse_number<double>(k, v);
    else if (k == "eps_min") c.eps_min = parse_number<double>(k, v);
    else if (k == "gap_threshold") c.gap_threshold = parse_number<double>(k, v);
    else if (k == "sphere_scan") c.sphere_scan = parse_number<int>(k, v);
    else if (k == "r_grid_per_decade") c.r_grid_per_decade = parse_number<int>(k, v);
    else if (k == "margin_grid") c.margin_grid = parse_number<int>(k, v);
    else if (k == "seed") c.seed = parse_number<std::uint64_t>(k, v);
    else if (k == "output_format") {
      if (v == "json") c.output_format = OutputFormat::Json;
      else if (v == "csv") c.output_format = OutputFormat::Csv;
      else throw DomainError("config: output_format must be json or csv");
    } else if (k == "output_path") c.output_path = v;
    else throw DomainError("config: unknown key " + k);
  }
}

}  // namespace

bool is_config_key(const std::string& key) {
  return std::find_if(kKeys.begin(), kKeys.end(), [&](const char* k) { return key == k; }) !=
         kKeys.end();
}

const char* format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

KeyValues parse_config_text(const std::string& text) {
  KeyValues out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (!is_config_key(k)) throw DomainError("config line " + std::to_string(lineno) + ": unknown key " + k);
    out[k] = v;
  }
  return out;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

KeyValues config_from_env() {
  KeyValues out;
  for (const char* k : kKeys) {
    std::string name = "CLAB_";
    for (const char* c = k; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    if (const char* v = std::getenv(name.c_str())) out[k] = v;
  }
  return out;
}

RunConfig resolve_config(const KeyValues& file, const KeyValues& env, const KeyValues& cli) {
  RunConfig c;
  apply(c, file);
  apply(c, env);
  apply(c, cli);
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  for (double t : {c.tol_norm, c.tol_attain, c.tol_oracle, c.eps_min, c.gap_threshold})
    if (!(t > 0) || !std::isfinite(t)) throw DomainError("config: tolerances must be positive");
  for (int g : {c.sphere_scan, c.r_grid_per_decade, c.margin_grid})
    if (g < 16) throw DomainError("config: grid sizes must be >= 16");
  if (c.eps_min > 1) throw DomainError("config: eps_min must be <= 1");
}

NormOptions norm_options(const RunConfig& c) {
  NormOptions o;
  o.scan_points = c.sphere_scan;
  o.tol_attain = c.tol_attain;
  return o;
}

SegmentOptions segment_options(const RunConfig& c) {
  SegmentOptions o;
  o.per_decade = c.r_grid_per_decade;
  return o;
}

ClassifyOptions classify_options(const RunConfig& c) {
  ClassifyOptions o;
  o.norm = norm_options(c);
  o.segment = segment_options(c);
  o.tol_norm = c.tol_norm;
  return o;
}

OracleOptions oracle_options(const RunConfig& c) {
  OracleOptions o;
  o.eps_min = c.eps_min;
  o.tol_oracle = c.tol_oracle;
  o.seed = c.seed;
  return o;
}

ProbeOptions probe_options(const RunConfig& c) {
  ProbeOptions o;
  o.gap_threshold = c.gap_threshold;
  o.seed = c.seed;
  return o;
}

}  // namespace clab
