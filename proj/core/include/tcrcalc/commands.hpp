#pragma once

#include "tcrcalc/budget.hpp"
#include "tcrcalc/serialize.hpp"
#include "tcrcalc/tcr.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace tcrcalc {

// One computation as requested on the command line or by a fixture.
struct Request {
  std::string command;  // witt, bredon, tcr, trr, mu, green, bar
  std::string mode;     // bredon: constant|norm; tcr: phi|full; trr: tower|limit; green: levels|ml
  std::string ring;
  std::string group;
  std::optional<unsigned> prime;
  unsigned level = 1;
  std::optional<Window> window;
  std::optional<unsigned> depth;

  static Request from_json(const Json& j);  // throws ParseError
  Json to_json() const;
};

// "lo:hi", inclusive, at most 64 degrees wide.
Window parse_window(std::string_view text);

// Throws ParseError on bad input and Refusal when a hypothesis fails.
Json run_request(const Request& r, const Budget& budget);

// Human-readable rendering of a run_request result.
std::string render_text(const Json& result);

// Every nonzero element is a unit.
bool is_field(const FinRing& k);

}  // namespace tcrcalc
