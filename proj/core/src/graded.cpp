#include "tcrcalc/graded.hpp"
#include "tcrcalc/errors.hpp"

#include <sstream>

namespace tcrcalc {

GradedGroups::GradedGroups(int lo, int hi) : lo_(lo), hi_(hi) {
  if (hi < lo) throw AlgebraError("graded groups: empty window");
}

void GradedGroups::set(int degree, FinAbGroup g) {
  if (degree < lo_ || degree > hi_) throw AlgebraError("graded groups: degree outside the window");
  if (g.is_trivial())
    groups_.erase(degree);
  else
    groups_[degree] = std::move(g);
}

const FinAbGroup& GradedGroups::at(int degree) const {
  static const FinAbGroup trivial;
  auto it = groups_.find(degree);
  return it == groups_.end() ? trivial : it->second;
}

bool operator==(const GradedGroups& a, const GradedGroups& b) {
  return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.groups_ == b.groups_;
}

std::string GradedGroups::to_string() const {
  std::ostringstream os;
  for (int d = lo_; d <= hi_; ++d) os << "pi_" << d << " = " << at(d).to_string() << '\n';
  return os.str();
}

std::map<int, KernelCokernel> graded_kernel_of_difference(const GradedHom& a, const GradedHom& b) {
  std::map<int, KernelCokernel> out;
  for (const auto& [d, f] : a) {
    auto it = b.find(d);
    if (it == b.end()) throw AlgebraError("graded difference: degree missing from second map");
    GroupHom diff = f - it->second;
    out.emplace(d, KernelCokernel{kernel(diff), cokernel(diff)});
  }
  if (b.size() != a.size()) throw AlgebraError("graded difference: degree missing from first map");
  return out;
}

}  // namespace tcrcalc
