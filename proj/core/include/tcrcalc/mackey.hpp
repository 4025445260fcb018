#pragma once

#include "tcrcalc/abelian.hpp"
#include "tcrcalc/chain.hpp"
#include "tcrcalc/graded.hpp"

#include <string>

namespace tcrcalc {

// Mackey functor for the group of order two.
struct C2Mackey {
  FinAbGroup underlying;  // M(C2/e)
  GroupHom w;             // Weyl action on the underlying level
  FinAbGroup fixed;       // M(C2/C2)
  GroupHom res;           // fixed -> underlying
  GroupHom tr;            // underlying -> fixed
  std::string name;
  // Set for inputs other than the constant and fixed-point functors the cell complex was pinned on.
  bool experimental = false;

  void validate() const;  // res∘tr = 1+w, w∘res = res, tr∘w = tr, w∘w = 1
};

C2Mackey constant_mackey(const FinAbGroup& g);
C2Mackey fixedpoint_mackey(const FinAbGroup& g, const GroupHom& w);

struct MackeyMap {
  GroupHom underlying;
  GroupHom fixed;
  void validate(const C2Mackey& src, const C2Mackey& tgt) const;
};

// Cellular chains of S^{kρ} with coefficients in M, k even: C_k = M(C2/C2), C_i = M(C2/e)
// for k < i <= 2k, d_{k+1} = tr, then 1-w and 1+w alternating.
ChainComplex rep_sphere_complex(const C2Mackey& m, int k);
ChainMap rep_sphere_map(const MackeyMap& f, const C2Mackey& src, const C2Mackey& tgt, int k);

GradedGroups rep_sphere_homotopy(const C2Mackey& m, int k);

// The fixed-point functor of (Z+Z/2, w(a,x) = (a,[a]+x)) and its map (2,0) to the constant Z.
C2Mackey norm_source_mackey();
MackeyMap norm_map();
GradedGroups norm_cofiber_homotopy(int k);

GradedGroups suspend(const GradedGroups& g, int shift);

}  // namespace tcrcalc
