#include "adelic/errors.hpp"
#include "adelic/report.hpp"

#include "doctest.h"

#include <sstream>

using namespace adelic;

namespace {

RunConfig wr_config(const std::string& dual) {
  RunConfig c;
  c.command = "wr-check";
  c.group = "adele";
  c.alpha = 0.7071;
  c.beta = 0.7071;
  c.dual = dual;
  return c;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("run config round trip") {
  RunConfig c = wr_config("auto");
  c.s = kInfinity;
  c.y_scale = 0.25;
  c.primes = {2, 11};
  c.finite = "2:1/2";
  auto j = c.to_json();
  RunConfig back = RunConfig::from_json(nlohmann::json::parse(canonical_json(j)));
  CHECK(back.to_json() == j);
  CHECK(std::isinf(back.s));
  CHECK(back.y_scale.value() == 0.25);
  CHECK(back.truncation().primes == std::vector<Prime>{2, 11});
}

TEST_CASE("run config validation") {
  RunConfig c = wr_config("auto");
  c.alpha = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = wr_config("auto");
  c.command = "nope";
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = wr_config("auto");
  c.primes = {2, 4};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = wr_config("auto");
  c.densities = {0.5, 1.5};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::from_json({{"alpah", 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(RunConfig::from_json({{"alpha", "x"}}), InvalidArgument);
}

TEST_CASE("wr-check reports") {
  Report dual = run(wr_config("auto"));
  CHECK(dual.exit_code == kExitSuccess);
  CHECK(dual.body["verdict"] == "dual");
  CHECK(dual.body["result"]["max_residual"].get<double>() < 1e-8);
  CHECK(dual.body["schema"] == "adelic-gabor/1");

  Report self = run(wr_config("self"));
  CHECK(self.exit_code == kExitNegative);
  CHECK(self.body["verdict"] == "not dual");
  CHECK(self.body["result"]["max_residual"].get<double>() == doctest::Approx(0.2071).epsilon(1e-3));

  SUBCASE("csv has one row per index") {
    std::string csv = emit(dual, "csv");
    CHECK(count_lines(csv) == dual.body["result"]["rows"].size() + 1);
    CHECK(csv.rfind("q,r,expected_re,expected_im,computed_re,computed_im,residual,exact_zero,integer\n", 0) == 0);
  }
  SUBCASE("json is byte identical across runs") {
    CHECK(emit(dual, "json") == emit(run(wr_config("auto")), "json"));
  }
  SUBCASE("config echo") { CHECK(dual.body["config"] == wr_config("auto").to_json()); }
}

TEST_CASE("not a frame is an honest negative") {
  RunConfig c = wr_config("auto");
  c.alpha = 1.0;
  c.beta = 1.0;
  Report r = run(c);
  CHECK(r.exit_code == kExitNegative);
  CHECK(r.body["verdict"] == "not a frame");
}

TEST_CASE("pair is exact") {
  RunConfig c;
  c.command = "pair";
  c.q = "1/2";
  c.r = "1/2";
  c.alpha = 1.0;
  Report r = run(c);
  CHECK(r.exit_code == kExitSuccess);
  CHECK(r.body["result"]["exact"] == true);
  CHECK(r.body["result"]["is_one"] == true);
  CHECK(r.body["result"]["turns"] == "0/1");
  CHECK(r.body["exact_parameters"]["alpha"] == "1/1");

  c.group = "real";
  c.q = "1";
  c.r = "1";
  c.y_scale = 0.5;
  r = run(c);
  CHECK(r.body["result"]["turns"] == "1/2");
  CHECK(r.body["verdict"] == "nontrivial");
}

TEST_CASE("reduce") {
  RunConfig c;
  c.command = "reduce";
  c.x = 1.7;
  c.finite = "2:1/2";
  c.alpha = 1.0;
  Report r = run(c);
  CHECK(r.body["result"]["q"] == "3/2");
  CHECK(r.body["result"]["in_fundamental_domain"] == true);
  c.finite = "2:x";
  CHECK_THROWS_AS(run(c), InvalidArgument);
}

TEST_CASE("canonical json") {
  nlohmann::json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", std::numeric_limits<double>::infinity()}, {"d", "x"}};
  CHECK(canonical_json(j) ==
        "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 0.10000000000000001,\n  \"c\": \"inf\",\n  \"d\": \"x\"\n}\n");
  Report r;
  r.csv.header = {"a", "b"};
  r.csv.rows = {{"x,y", "say \"hi\""}};
  CHECK(emit(r, "csv") == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
  CHECK_THROWS_AS(emit(r, "xml"), InvalidArgument);
}

TEST_CASE("timing only on request") {
  RunConfig c;
  c.command = "pair";
  CHECK_FALSE(run(c).body.contains("timing"));
  c.timing = true;
  CHECK(run(c).body.contains("timing"));
}
