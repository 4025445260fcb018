#pragma once

#include "tcrcalc/abelian.hpp"

#include <map>
#include <optional>
#include <string>

namespace tcrcalc {

struct Periodicity {
  int period = 0;
  std::string description;
};

// Groups indexed by degree over an inclusive window; missing degrees are zero.
class GradedGroups {
 public:
  GradedGroups() = default;
  GradedGroups(int lo, int hi);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  void set(int degree, FinAbGroup g);
  const FinAbGroup& at(int degree) const;
  const std::map<int, FinAbGroup>& groups() const { return groups_; }

  std::optional<Periodicity> periodicity;

  // Same window, same groups.
  friend bool operator==(const GradedGroups& a, const GradedGroups& b);

  std::string to_string() const;

 private:
  int lo_ = 0, hi_ = -1;
  std::map<int, FinAbGroup> groups_;
};

using GradedHom = std::map<int, GroupHom>;

struct KernelCokernel {
  SubgroupResult kernel;
  QuotientResult cokernel;
};

// Degreewise ker and coker of a - b.
std::map<int, KernelCokernel> graded_kernel_of_difference(const GradedHom& a, const GradedHom& b);

}  // namespace tcrcalc
