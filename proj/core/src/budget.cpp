#include "tcrcalc/budget.hpp"
#include "tcrcalc/errors.hpp"

#include <cstdlib>
#include <string>

namespace tcrcalc {

Budget Budget::from_environment() {
  Budget b;
  if (const char* v = std::getenv("TCRCALC_MAX_ENUM")) {
    try {
      std::size_t pos = 0;
      unsigned long long n = std::stoull(v, &pos);
      if (pos != std::string(v).size() || n == 0) throw std::invalid_argument(v);
      b.max_enum = static_cast<std::size_t>(n);
    } catch (const std::exception&) {
      throw ParseError(std::string("TCRCALC_MAX_ENUM is not a positive integer: ") + v);
    }
  }
  return b;
}

void Budget::check() const {
  if (stop.stop_requested()) throw Cancelled();
}

void Budget::require_enum(std::size_t size, const char* what) const {
  check();
  if (size > max_enum)
    throw Refusal("enumeration-bound", std::string(what) + " needs " + std::to_string(size) +
                                           " elements, above the limit " + std::to_string(max_enum));
}

}  // namespace tcrcalc
