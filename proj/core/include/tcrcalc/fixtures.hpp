#pragma once

#include "tcrcalc/budget.hpp"
#include "tcrcalc/serialize.hpp"

#include <string>
#include <vector>

namespace tcrcalc {

// A fixture runs either a command request ("command") or a named probe of a lower-level
// routine ("probe"), then compares `expect` against the result. Objects in `expect` match
// partially, everything else must be equal.
struct Fixture {
  std::string id;
  int criterion = 0;
  std::string kind;
  Json params;
  Json expect;
};

struct FixtureOutcome {
  std::string id;
  int criterion = 0;
  bool pass = false;
  std::string detail;  // first mismatch, or the exception text
  Json actual;
  double seconds = 0;
};

// The suite compiled into the library.
const std::string& default_fixture_text();
// Throws ParseError on malformed JSON or fixture records.
std::vector<Fixture> parse_fixtures(const std::string& text);
std::vector<Fixture> default_fixtures();

FixtureOutcome run_fixture(const Fixture& f, const Budget& budget);

// Empty when `actual` satisfies `expect`, otherwise the JSON pointer of the first mismatch.
std::string json_mismatch(const Json& expect, const Json& actual, const std::string& path = "");

// Names of the probes a fixture of kind "probe" may use.
std::vector<std::string> probe_names();

}  // namespace tcrcalc
