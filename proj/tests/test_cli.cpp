#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fkdet/cli.hpp"

using namespace fkdet;
using nlohmann::json;

namespace {

RunConfig config(const char* subcommand) {
  RunConfig c;
  c.subcommand = subcommand;
  return c;
}

json ok(const RunConfig& c) {
  const RunResult r = run(c);
  REQUIRE_MESSAGE(r.exit_code == 0, r.error);
  CHECK(r.error.empty());
  return json::parse(r.output);
}

json failure(const RunConfig& c, int code, const char* kind) {
  const RunResult r = run(c);
  CHECK(r.exit_code == code);
  CHECK(r.output.empty());
  const json e = json::parse(r.error);
  CHECK(e["exit_code"] == code);
  CHECK(e["error"]["kind"] == kind);
  CHECK_FALSE(e["error"]["message"].get<std::string>().empty());
  return e;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("mahler report") {
    RunConfig c = config("mahler");
    c.poly = "z-2";
    const json j = ok(c);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["tool"] == "fkdet");
    CHECK(j["subcommand"] == "mahler");
    CHECK(j["result"]["measure"]["value"].get<double>() == doctest::Approx(2).epsilon(1e-14));
    CHECK(j["result"]["roots_outside_unit_circle"] == 1);

    c.poly = "z^10 + z^9 - z^7 - z^6 - z^5 - z^4 - z^3 + z + 1";
    const json l = ok(c);
    CHECK(std::fabs(l["result"]["measure"]["value"].get<double>() - 1.17628) < 5e-6);
    CHECK(l["result"]["degree"] == 10);
  }

  TEST_CASE("reports embed config, version and tolerances") {
    RunConfig c = config("mahler");
    c.poly = "1 + z1 + z2";
    c.method = "quadrature";
    c.grid = 256;
    const json j = ok(c);
    CHECK(j["version"] == FKDET_VERSION);
    CHECK(j["config"]["poly"] == "1 + z1 + z2");
    CHECK(j["config"]["method"] == "quadrature");
    CHECK(j["config"]["grid"] == 256);
    for (const char* key : {"unit_circle", "quadrature_zero_cutoff", "one_threshold",
                            "sub_approximation", "convergence"})
      CHECK(j["tolerances"].contains(key));
  }

  TEST_CASE("identical configs give byte-identical reports") {
    std::vector<RunConfig> configs;
    RunConfig a = config("mahler");
    a.poly = "1 + z1 + z2";
    configs.push_back(a);
    RunConfig b = config("lehmer-scan");
    b.cyclic = 3;
    b.coeff_bound = 2;
    b.survey = true;
    configs.push_back(b);
    RunConfig d = config("approx-chain");
    d.poly = "z - 2";
    d.chain = "2..12";
    configs.push_back(d);
    for (const RunConfig& c : configs) {
      const RunResult x = run(c);
      const RunResult y = run(c);
      CHECK(x.exit_code == 0);
      CHECK(x.output == y.output);
    }
  }

  TEST_CASE("fkdet-finite report") {
    RunConfig c = config("fkdet-finite");
    c.cyclic = 2;
    c.elem = "t+2";
    const json j = ok(c);
    CHECK(j["result"]["value"]["exact"]["base"] == "3");
    CHECK(j["result"]["value"]["exact"]["exponent"] == "1/2");
    CHECK(j["result"]["value"]["value"].get<double>() == doctest::Approx(std::sqrt(3.0)));

    RunConfig m = config("fkdet-finite");
    m.trivial = true;
    m.matrix = "[[1, 1], [0, 0]]";
    CHECK(ok(m)["result"]["value"]["exact"]["text"] == "2^(1/2)");
  }

  TEST_CASE("fkdet-zd report") {
    RunConfig c = config("fkdet-zd");
    c.matrix = "[[z, 1], [1, z - 1]]";
    const json j = ok(c);
    CHECK(j["result"]["value"]["value"].get<double>() ==
          doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-10));
  }

  TEST_CASE("approx-chain csv") {
    RunConfig c = config("approx-chain");
    c.poly = "z-2";
    c.chain = "2..40";
    c.format = "csv";
    const RunResult r = run(c);
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    CHECK(line == "moduli,value");
    std::size_t n = 2;
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      CHECK(std::stoul(line.substr(0, comma)) == n);
      const double expected = std::pow(std::pow(2.0, double(n)) - 1, 1.0 / double(n));
      CHECK(std::stod(line.substr(comma + 1)) == doctest::Approx(expected).epsilon(1e-12));
      ++n;
    }
    CHECK(n == 41);
  }

  TEST_CASE("lehmer-scan and exact-constants") {
    RunConfig c = config("lehmer-scan");
    c.cyclic = 2;
    c.coeff_bound = 2;
    const json j = ok(c);
    CHECK(j["result"]["witness"] == "2 + t");

    RunConfig k = config("exact-constants");
    k.cyclic = 5;
    CHECK(ok(k)["result"].dump().find("Lambda^w") != std::string::npos);
  }

  TEST_CASE("domain errors exit with 1") {
    RunConfig c = config("mahler");
    c.poly = "0";
    failure(c, 1, "domain");

    RunConfig g = config("fkdet-finite");
    g.group_file = "bad_group.json";
    {
      std::ofstream f(*g.group_file);
      f << R"({"order": 2, "identity": 0, "table": [[0, 1], [1, 1]]})";
    }
    g.elem = "e";
    failure(g, 1, "domain");
    std::remove("bad_group.json");
  }

  TEST_CASE("configuration errors exit with 2") {
    RunConfig both = config("fkdet-zd");
    both.matrix = "[[z]]";
    both.matrix_file = "m.json";
    failure(both, 2, "config");

    RunConfig missing = config("mahler");
    failure(missing, 2, "config");

    RunConfig unknown = config("frobnicate");
    failure(unknown, 2, "config");

    RunConfig method = config("mahler");
    method.poly = "z";
    method.method = "simpson";
    failure(method, 2, "config");

    RunConfig format = config("mahler");
    format.poly = "z";
    format.format = "xml";
    failure(format, 2, "config");

    RunConfig foreign = config("mahler");
    foreign.poly = "z";
    foreign.cyclic = 3;
    failure(foreign, 2, "config");

    RunConfig syntax = config("mahler");
    syntax.poly = "z +";
    failure(syntax, 2, "parse");
  }

  TEST_CASE("run_and_write routes streams") {
    RunConfig c = config("mahler");
    c.poly = "z-2";
    std::ostringstream out, err;
    CHECK(run_and_write(c, out, err) == 0);
    CHECK(err.str().empty());
    CHECK(json::parse(out.str())["result"]["degree"] == 1);

    c.poly = "0";
    std::ostringstream out2, err2;
    CHECK(run_and_write(c, out2, err2) == 1);
    CHECK(out2.str().empty());
    CHECK(json::parse(err2.str())["exit_code"] == 1);
  }

  TEST_CASE("error json") {
    const json e = json::parse(error_json("config", "bad \"flag\"", 2));
    CHECK(e["error"]["message"] == "bad \"flag\"");
  }
}
