#pragma once

#include "tcrcalc/abelian.hpp"
#include "tcrcalc/budget.hpp"
#include "tcrcalc/enumeration.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcrcalc {

// Finite group given by its multiplication table.
struct FiniteGroup {
  std::string name;
  std::vector<Elem> table;  // a * b at a * size + b
  std::vector<Elem> inverse;
  std::vector<std::string> names;
  Elem identity = 0;

  std::size_t size() const { return inverse.size(); }
  Elem mul(Elem a, Elem b) const { return table[a * size() + b]; }
  bool is_abelian() const;

  static FiniteGroup cyclic(unsigned n);
  static FiniteGroup dihedral(unsigned n);  // order 2n
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
};

struct MonoidWithAntiInv {
  FiniteGroup group;
  std::vector<Elem> w;
  std::string involution;  // "inv" or "trivial"

  // Throws AlgebraError unless w(gh) = w(h)w(g) and w∘w = id.
  void validate() const;
  Elem right(Elem x, Elem g) const;  // x·g = w(g) x g
  Elem left(Elem g, Elem y) const;   // g·y = g y w(g)
};

// Parsed group spec: either a finite group with anti-involution or a finitely generated
// abelian group (with trivial involution) that is handled through normal forms.
struct BarInput {
  std::string spec;
  std::optional<MonoidWithAntiInv> finite;
  std::optional<FinAbGroup> abelian;  // set whenever the group is abelian with trivial involution
};

// Grammar: factor ("x" factor)* [" with " ("inv"|"trivial")], factor := "Z" | "C"INT | "D"INT | "S3".
BarInput parse_bar_group(std::string_view text);

struct Component {
  Elem x = 0, y = 0;  // representative
  std::vector<Elem> aut;
  std::size_t orbit_size = 0;
  std::optional<FinAbGroup> aut_group;  // invariants when Aut is abelian
};

struct ComponentDecomposition {
  MonoidWithAntiInv g;
  std::vector<Elem> fixed;  // G^{Z/2}
  std::vector<Component> components;
  std::vector<std::size_t> component_of;  // pair (i, j) of fixed indices at i * |fixed| + j
  std::size_t index_of(Elem x, Elem y) const;
};

ComponentDecomposition components(const MonoidWithAntiInv& g, const Budget& budget = {});

struct ComponentMap {
  std::vector<std::size_t> image;
  bool well_defined = true;   // constant on every orbit
  bool aut_compatible = true;
  std::vector<std::size_t> fixed_points;
  std::vector<std::pair<std::size_t, std::size_t>> free_pairs;  // for involutions
};

// ψ(x, y) = (x, y·x); on automorphisms the identity, which must land in the target Aut.
ComponentMap psi_on_components(const ComponentDecomposition& d);
// τ(x, y) = (y, x); on automorphisms g ↦ w(g^{-1}).
ComponentMap tau_on_components(const ComponentDecomposition& d);

// Closed-form index G × G/2 for abelian groups with trivial involution.
struct AbelianLabel {
  IntVector x;  // coordinates in G
  IntVector z;  // coordinates in G/2, one per even or free invariant factor
  friend bool operator==(const AbelianLabel&, const AbelianLabel&) = default;
  friend bool operator<(const AbelianLabel& a, const AbelianLabel& b) {
    return a.x != b.x ? a.x < b.x : a.z < b.z;
  }
};

AbelianLabel abelian_label(const FinAbGroup& g, const IntVector& x, const IntVector& y);  // [x, y] ↦ (x + y, [y])
AbelianLabel abelian_psi(const FinAbGroup& g, const AbelianLabel& l);  // (2x, [x] + z)
AbelianLabel abelian_tau(const FinAbGroup& g, const AbelianLabel& l);  // (x, [x] + z)
std::string to_string(const AbelianLabel& l);

struct ClosedFormCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

// Finite abelian input: the orbit decomposition against the closed-form bijection, ψ and τ.
ClosedFormCheck check_abelian_closed_form(const ComponentDecomposition& d);
// Free abelian Z^r: union-find on pairs with coordinates in [-bound, bound].
ClosedFormCheck check_free_abelian_window(std::size_t rank, int bound);

struct AbelianCensus {
  FinAbGroup group;
  bool two_torsion = false;
  Integer g_mod_2;                          // |G/2|, the type-one components
  std::optional<Integer> tau_fixed;         // |2G × G/2| when finite
  std::optional<Integer> free_orbits;       // |((G∖2G) × G/2)/C2| when finite
  std::string type_one;
  std::string type_two;
};

// Refuses groups with elements infinitely divisible by 2 (odd torsion).
AbelianCensus abelian_report(const FinAbGroup& g);

}  // namespace tcrcalc
