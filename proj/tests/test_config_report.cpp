#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "clab/config.hpp"
#include "clab/report.hpp"
#include "clab/rng.hpp"

using namespace clab;

TEST_CASE("config precedence") {
  const KeyValues file{{"seed", "1"}, {"tol_norm", "1e-7"}, {"margin_grid", "101"}};
  const KeyValues env{{"seed", "2"}, {"tol_norm", "1e-6"}};
  const KeyValues cli{{"seed", "3"}};
  const RunConfig c = resolve_config(file, env, cli);
  CHECK(c.seed == 3);
  CHECK(c.tol_norm == 1e-6);
  CHECK(c.margin_grid == 101);
  CHECK(c.sphere_scan == RunConfig{}.sphere_scan);

  const RunConfig d = resolve_config({}, {}, {});
  CHECK(d.tol_oracle == 1e-30);
  CHECK(d.seed == 20240611);
  CHECK(d.output_format == OutputFormat::Json);
  CHECK(resolve_config({{"output_format", "csv"}}, {}, {}).output_format == OutputFormat::Csv);
}

TEST_CASE("config validation and parsing") {
  CHECK_THROWS_AS(resolve_config({}, {}, {{"tol_norm", "-1"}}), DomainError);
  CHECK_THROWS_AS(resolve_config({}, {}, {{"tol_norm", "0"}}), DomainError);
  CHECK_THROWS_AS(resolve_config({}, {}, {{"tol_norm", "nan"}}), DomainError);
  CHECK_THROWS_AS(resolve_config({}, {}, {{"sphere_scan", "15"}}), DomainError);
  CHECK_THROWS_AS(resolve_config({}, {}, {{"seed", "abc"}}), DomainError);
  CHECK_THROWS_AS(resolve_config({}, {}, {{"seed", "12x"}}), DomainError);
  CHECK_THROWS_AS(resolve_config({}, {}, {{"output_format", "xml"}}), DomainError);
  CHECK_THROWS_AS(resolve_config({}, {}, {{"no_such_key", "1"}}), DomainError);

  const KeyValues kv = parse_config_text("# comment\n seed = 42 \n\ntol_attain=1e-10 # trailing\n");
  CHECK(kv.at("seed") == "42");
  CHECK(kv.at("tol_attain") == "1e-10");
  CHECK(kv.size() == 2);
  CHECK_THROWS_AS(parse_config_text("seed 42\n"), DomainError);
  CHECK_THROWS_AS(parse_config_text("bogus = 1\n"), DomainError);

  const std::string path = "clab_test_config.txt";
  {
    std::ofstream f(path);
    f << "margin_grid = 64\n";
  }
  CHECK(read_config_file(path).at("margin_grid") == "64");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_config_file("/nonexistent/clab.cfg"), DomainError);
  CHECK(is_config_key("eps_min"));
  CHECK(!is_config_key("output"));
}

TEST_CASE("options derived from config") {
  RunConfig c;
  c.sphere_scan = 1024;
  c.r_grid_per_decade = 32;
  c.eps_min = 1e-3;
  c.seed = 9;
  CHECK(norm_options(c).scan_points == 1024);
  CHECK(segment_options(c).per_decade == 32);
  CHECK(oracle_options(c).eps_min == 1e-3);
  CHECK(oracle_options(c).seed == 9);
  CHECK(probe_options(c).seed == 9);
  CHECK(classify_options(c).segment.per_decade == 32);
}

TEST_CASE("json emission is canonical and round-trips") {
  Json j;
  j["b"] = 0.1;
  j["a"] = -0.0;
  j["inf"] = std::numeric_limits<double>::infinity();
  j["ints"] = {1, 2, 3};
  j["mixed"] = Json::array({1, "x"});
  j["nested"] = {{"z", 1e-300}, {"y", Json::array()}, {"x", Json::object()}};
  j["name"] = "q\"uote";
  const std::string s = emit_json(j);
  CHECK(s.find("\"b\": 0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"a\": 0,") != std::string::npos);
  CHECK(s.find("\"inf\": null") != std::string::npos);
  CHECK(s.find("\"ints\": [1, 2, 3]") != std::string::npos);
  CHECK(s.find("\"b\"") < s.find("\"a\""));
  CHECK(s.back() == '\n');
  CHECK(emit_json(Json::parse(s)) == s);

  Stream rng(71);
  Json arr = Json::array();
  for (int i = 0; i < 200; ++i) arr.push_back(rng.normal() * std::pow(10.0, 40 * rng.uniform() - 20));
  const std::string t = emit_json(Json{{"v", arr}});
  const Json back = Json::parse(t);
  for (int i = 0; i < 200; ++i) CHECK(back["v"][i].get<double>() == arr[i].get<double>());
  CHECK(emit_json(back) == t);

  CHECK(fmt17(-0.0) == "0");
  CHECK(fmt17(1.0) == "1");
  CHECK(fmt17(1.0 / 3) == "0.33333333333333331");
}

TEST_CASE("reports of library objects round-trip") {
  const Exponent p(3.0);
  const Operator2x2 t{1, 0, 0, 0.5, p, p};
  const Json j{{"norm", to_json(op_norm(t))}, {"classify", to_json(classify(t))}, {"config", to_json(RunConfig{})}};
  const std::string s = emit_json(j);
  CHECK(emit_json(Json::parse(s)) == s);
  CHECK(j["classify"]["verdict"] == "NotExtreme");
  CHECK(j["config"]["output_format"] == "json");
  CHECK(to_json(ExtReal::pos_inf()) == "inf");
  CHECK(to_json(ExtReal::neg_inf()) == "-inf");
  CHECK(to_json(ExtReal::finite(2.5)) == 2.5);
}

TEST_CASE("csv") {
  CsvTable c({"r", "margin"});
  c.add({fmt17(0.5), fmt17(0.25)});
  c.add({"1", "2"});
  CHECK(c.rows() == 2);
  CHECK(c.text() == "r,margin\n0.5,0.25\n1,2\n");
  CHECK_THROWS_AS(c.add({"1"}), DomainError);
}
