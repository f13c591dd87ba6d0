#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "clab/classify.hpp"
#include "clab/mip.hpp"
#include "clab/oracle.hpp"

namespace clab {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  double tol_norm = 1e-8;
  double tol_attain = 1e-9;
  double tol_oracle = 1e-30;  // quad-precision excess, see OracleOptions
  double eps_min = 1e-4;
  double gap_threshold = 1e-2;
  int sphere_scan = 4096;
  int r_grid_per_decade = 512;
  int margin_grid = 2001;
  std::uint64_t seed = 20240611;
  OutputFormat output_format = OutputFormat::Json;
  std::string output_path;  // empty = stdout
};

using KeyValues = std::map<std::string, std::string>;

// key = value lines; '#' starts a comment. Unknown keys are errors.
KeyValues parse_config_text(const std::string& text);
KeyValues read_config_file(const std::string& path);
// CLAB_TOL_NORM, CLAB_SEED, ... for every key that is set.
KeyValues config_from_env();

// defaults < file < env < cli. Throws DomainError on bad values.
RunConfig resolve_config(const KeyValues& file, const KeyValues& env, const KeyValues& cli);
void validate(const RunConfig& c);

const char* format_name(OutputFormat f);
bool is_config_key(const std::string& key);

NormOptions norm_options(const RunConfig& c);
SegmentOptions segment_options(const RunConfig& c);
ClassifyOptions classify_options(const RunConfig& c);
OracleOptions oracle_options(const RunConfig& c);
ProbeOptions probe_options(const RunConfig& c);

}  // namespace clab
