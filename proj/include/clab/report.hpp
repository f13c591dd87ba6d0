#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "clab/config.hpp"
#include "clab/inequality.hpp"
#include "clab/mip.hpp"
#include "clab/oracle.hpp"
#include "clab/segment.hpp"

namespace clab {

using Json = nlohmann::ordered_json;

// Canonical text: two-space indent, insertion order, floats as %.17g,
// -0 written as 0, non-finite floats as null. Parsing the output and
// emitting again gives the same bytes.
std::string emit_json(const Json& j);
std::string fmt17(double v);

// CSV with a header row, ',' separator and LF endings. Doubles as %.17g.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(const std::vector<std::string>& row);
  std::string text() const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Json to_json(const ExtReal& v);
Json to_json(const LpVector& v);
Json to_json(const Operator2x2& t);
Json to_json(const NormCertificate& c);
Json to_json(const SStar& s);
Json to_json(const SegmentData& d);
Json to_json(const Classification& c);
Json to_json(const OracleVerdict& v);
Json to_json(const Margin& m);
Json to_json(const ProbeReport& r, bool with_distances = true);
Json to_json(const ClosureReport& r);
Json to_json(const ClosednessReport& r);
Json to_json(const RunConfig& c);

}  // namespace clab
