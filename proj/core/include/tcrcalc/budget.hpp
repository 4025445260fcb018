#pragma once

#include <cstddef>
#include <stop_token>

namespace tcrcalc {

// Resource limits and cooperative cancellation shared by long computations.
struct Budget {
  std::size_t max_enum = std::size_t{1} << 16;
  unsigned max_depth = 12;
  std::stop_token stop;

  // Reads TCRCALC_MAX_ENUM when set.
  static Budget from_environment();

  void check() const;
  void require_enum(std::size_t size, const char* what) const;
};

}  // namespace tcrcalc
