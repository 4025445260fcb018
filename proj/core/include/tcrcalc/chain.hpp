#pragma once

#include "tcrcalc/abelian.hpp"

#include <map>
#include <vector>

namespace tcrcalc {

// Bounded chain complex; d_i : C_i -> C_{i-1}. Degrees outside [lo, hi] are zero.
class ChainComplex {
 public:
  ChainComplex() = default;
  // differentials[k] is d_{lo+k+1}; d∘d = 0 is checked.
  ChainComplex(int lo, std::vector<FinAbGroup> groups, std::vector<GroupHom> differentials);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(groups_.size()) - 1; }
  bool empty() const { return groups_.empty(); }

  FinAbGroup group(int i) const;
  GroupHom differential(int i) const;

  // (Σ^k C)_i = C_{i-k}, differential multiplied by (-1)^k.
  ChainComplex shift(int k) const;

 private:
  int lo_ = 0;
  std::vector<FinAbGroup> groups_;
  std::vector<GroupHom> diffs_;
};

struct ChainMap {
  ChainComplex source;
  ChainComplex target;
  std::map<int, GroupHom> components;  // missing degrees are zero

  GroupHom at(int i) const;
  void validate() const;  // throws unless the squares commute
};

struct HomologyData {
  FinAbGroup group;
  SubgroupResult cycles;
  GroupHom projection;  // cycles -> homology
};

HomologyData homology_data(const ChainComplex& c, int i);
FinAbGroup homology(const ChainComplex& c, int i);

// Map on homology induced by a degreewise map sending cycles to cycles and boundaries to boundaries.
GroupHom induced_map(const HomologyData& src, const HomologyData& tgt, const GroupHom& component);
GroupHom induced_on_homology(const ChainMap& f, int i);

// Cone_i = C_{i-1} ⊕ D_i, d(c, x) = (-dc, f(c) + dx).
ChainComplex mapping_cone(const ChainMap& f);

// Checks exactness of H(C) -> H(D) -> H(Cone) -> H(C)[-1] on degrees lo..hi.
bool cone_sequence_exact(const ChainMap& f, int lo, int hi);

}  // namespace tcrcalc
