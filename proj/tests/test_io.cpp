#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "divkummer/io.hpp"

using namespace divkum;

TEST_CASE("filter strings") {
  CHECK(parse_filter(Json("0")).kind == FilterKind::Zero);
  CHECK(parse_filter(Json("1")).kind == FilterKind::One);
  CHECK(parse_filter(Json("inf")).kind == FilterKind::AllNonzero);
  IdealFilter p = parse_filter(Json("5^inf"));
  CHECK(p.kind == FilterKind::PPower);
  CHECK(p.p == 5);
  IdealFilter pr = parse_filter(Json{{"principal", {"6", "10"}}});
  CHECK(pr.kind == FilterKind::Principal);
  CHECK_THROWS(parse_filter(Json("q^inf")));
  CHECK(parse_filter(Json(filter_json(p))) == p);
}

TEST_CASE("module and map round-trips") {
  Json doc = {{"module", {{"generators", 3}, {"relations", {{"0", "6", "0"}, {"0", "0", "2"}}}}}};
  FgModule m = parse_module(doc);
  CHECK(m.rank == 1);
  CHECK(m.factors == std::vector<Int>{2, 6});
  CHECK(parse_module_obj(module_json(m), Ring::integers()) == m);

  Ring gauss = Ring::quadratic(0, 1);
  Json qdoc = {{"ring", {{"kind", "quadratic"}, {"t", "0"}, {"n", "1"}}},
               {"module",
                {{"generators", 2},
                 {"relations", Json::array({Json::array({"2", "0"}), Json::array({"0", "2"})})},
                 {"action", Json::array({Json::array({"0", "1"}), Json::array({"-1", "0"})})}}}};
  FgModule qm = parse_module(qdoc);
  CHECK(parse_module_obj(module_json(qm), gauss) == qm);
}

TEST_CASE("dispatch basics and exit codes") {
  // divide example reproduces 3Z
  Json divide = {{"module", {{"generators", 1}, {"relations", Json::array()}}},
                 {"submodule", {{"12"}}},
                 {"filter", "2^inf"}};
  RunResult r = run_command("divide", divide);
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["result"]["basis"][0][0] == "3");

  // determinism: identical inputs give byte-identical reports
  RunResult r2 = run_command("divide", divide);
  CHECK(r.report.dump() == r2.report.dump());

  // kummer-bound with d = n = m = 1
  Json kb = {{"bound",
              {{"d", "1"}, {"n", "1"}, {"m", "1"}, {"rank", 2}, {"s", 2}, {"level", "8"}}}};
  RunResult r3 = run_command("kummer-bound", kb);
  CHECK(r3.exit_code == 0);
  CHECK(r3.report["result"]["c"] == "1");

  // schema error: exit 2
  RunResult bad = run_command("divide", Json{{"filter", "2^inf"}});
  CHECK(bad.exit_code == 2);
  CHECK(bad.report["error"]["kind"] == "input");

  // mathematical refusal: exit 1
  Json nopush = {{"filter", "2^inf"},
                 {"target", {{"s", 1}}},
                 {"base", {{"module", {{"generators", 1}}}}},
                 {"left", {{"module", {{"generators", 1}}}}},
                 {"right", {{"module", {{"generators", 1}}}}},
                 {"f", {{"2"}}},
                 {"g", {{"2"}}}};
  RunResult refuse = run_command("pushout", nopush);
  CHECK(refuse.exit_code == 1);
  CHECK(refuse.report["error"]["name"] == "NotPure");

  // unknown commands are input errors
  CHECK(run_command("frobnicate", Json::object()).exit_code == 2);
}

TEST_CASE("pointing validation surfaces as input error") {
  Json doc = {{"filter", "inf"},
              {"target", {{"s", 1}}},
              {"module", {{"generators", 2}, {"relations", Json::array({Json::array({"0", "6"})})}}},
              {"pointing", {{"1/4"}}}};
  RunResult r = run_command("saturate", doc);
  CHECK(r.exit_code == 2);
  std::string msg = r.report["error"]["message"].get<std::string>();
  CHECK(msg.find("NonInjectivePointing") != std::string::npos);
}

TEST_CASE("level too small is a distinct refusal") {
  Json doc = {{"filter", "2^inf"},
              {"target", {{"s", 1}}},
              {"level", "2"},
              {"extension",
               {{"base", {{"module", {{"generators", 2},
                                      {"relations", Json::array({Json::array({"0", "2"})})}}},
                          {"pointing", {{"1/2"}}}}},
                {"total", {{"module", {{"generators", 2},
                                       {"relations", Json::array({Json::array({"0", "4"})})}}},
                           {"pointing", {{"1/4"}}}}},
                {"inc", Json::array({Json::array({"1", "0"}), Json::array({"0", "2"})})}}}};
  RunResult r = run_command("normal", doc);
  CHECK(r.exit_code == 1);
  CHECK(r.report["error"]["name"] == "LevelTooSmall");
  CHECK(r.report["error"].contains("minimal_level"));
}

TEST_CASE("digest is stable") {
  Json a = {{"x", "1"}};
  CHECK(input_digest(a) == input_digest(Json{{"x", "1"}}));
  CHECK(input_digest(a) != input_digest(Json{{"x", "2"}}));
}
