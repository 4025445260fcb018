#include "tcrcalc/commands.hpp"
#include "tcrcalc/errors.hpp"
#include "tcrcalc/fixtures.hpp"

#include <doctest.h>

#include <set>

using namespace tcrcalc;

TEST_CASE("the embedded suite parses and covers every criterion") {
  std::vector<Fixture> fs = default_fixtures();
  CHECK(fs.size() >= 40);
  std::set<int> criteria;
  for (const Fixture& f : fs) criteria.insert(f.criterion);
  for (int c = 1; c <= 10; ++c) CHECK(criteria.count(c) == 1);
  for (std::size_t i = 1; i < fs.size(); ++i) CHECK(fs[i - 1].id < fs[i].id);
}

TEST_CASE("partial matching") {
  Json actual = Json::parse(R"({"a": 1, "b": {"c": [1, 2], "d": "x"}})");
  CHECK(json_mismatch(Json::parse(R"({"a": 1})"), actual).empty());
  CHECK(json_mismatch(Json::parse(R"({"b": {"d": "x"}})"), actual).empty());
  CHECK(json_mismatch(Json::parse(R"({"b": {"c": [1]}})"), actual) == "/b/c");
  CHECK(json_mismatch(Json::parse(R"({"b": {"c": [1, 3]}})"), actual) == "/b/c/1");
  CHECK(json_mismatch(Json::parse(R"({"z": 1})"), actual) == "/z");
  CHECK(json_mismatch(Json::parse(R"({"a": "1"})"), actual) == "/a");
  CHECK(json_mismatch(Json::parse("[]"), actual) == "/");
}

TEST_CASE("malformed fixture files") {
  CHECK_THROWS_AS(parse_fixtures("{"), ParseError);
  CHECK_THROWS_AS(parse_fixtures("[]"), ParseError);
  CHECK_THROWS_AS(parse_fixtures(R"({"fixtures": [{"id": "x"}]})"), ParseError);
  CHECK_THROWS_AS(
      parse_fixtures(R"({"fixtures": [{"id": "x", "criterion": 1, "kind": "other", "params": {}, "expect": {}}]})"),
      ParseError);
  CHECK_THROWS_AS(parse_fixtures(
                      R"({"fixtures": [{"id": "x", "criterion": 1, "kind": "probe", "params": {"name": "nope"}, "expect": {}}]})"),
                  ParseError);
  const char* dup = R"({"fixtures": [
    {"id": "x", "criterion": 1, "kind": "command", "params": {"command": "mu", "ring": "Z/2"}, "expect": {}},
    {"id": "x", "criterion": 1, "kind": "command", "params": {"command": "mu", "ring": "Z/2"}, "expect": {}}]})";
  CHECK_THROWS_AS(parse_fixtures(dup), ParseError);
}

TEST_CASE("running a fixture records refusals and mismatches") {
  Budget b;
  auto one = [](const char* text) { return parse_fixtures(text).at(0); };
  FixtureOutcome ok = run_fixture(
      one(R"({"fixtures": [{"id": "a", "criterion": 7, "kind": "command", "params": {"command": "mu", "ring": "Z/2"},
                             "expect": {"mu_iso": true}}]})"),
      b);
  CHECK(ok.pass);
  FixtureOutcome refused = run_fixture(
      one(R"({"fixtures": [{"id": "a", "criterion": 5, "kind": "command",
                             "params": {"command": "tcr", "mode": "phi", "ring": "Z/4", "prime": 2},
                             "expect": {"refusal": "perfect-char-2"}}]})"),
      b);
  CHECK(refused.pass);
  FixtureOutcome wrong = run_fixture(
      one(R"({"fixtures": [{"id": "a", "criterion": 1, "kind": "command", "params": {"command": "witt", "ring": "Z/2", "level": 2},
                             "expect": {"group": {"invariants": [2, 2]}}}]})"),
      b);
  CHECK_FALSE(wrong.pass);
  CHECK(wrong.detail.find("/group/invariants") != std::string::npos);
}

TEST_CASE("every embedded fixture passes") {
  Budget b;
  for (const Fixture& f : default_fixtures()) {
    CAPTURE(f.id);
    FixtureOutcome o = run_fixture(f, b);
    CHECK_MESSAGE(o.pass, o.detail);
  }
}

TEST_CASE("request parsing") {
  CHECK_THROWS_AS(Request::from_json(Json::parse(R"({"command": "nope"})")), ParseError);
  CHECK_THROWS_AS(parse_window("3:1"), ParseError);
  CHECK_THROWS_AS(parse_window("0:100"), ParseError);
  CHECK_THROWS_AS(parse_window("a:b"), ParseError);
  Window w = parse_window("-2:9");
  CHECK(w.lo == -2);
  CHECK(w.hi == 9);
  Request r = Request::from_json(Json::parse(R"({"command": "witt", "ring": "Z/2", "level": 3})"));
  CHECK(Request::from_json(r.to_json()).to_json() == r.to_json());
}
