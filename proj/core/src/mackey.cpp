#include "tcrcalc/errors.hpp"
#include "tcrcalc/mackey.hpp"

namespace tcrcalc {

void C2Mackey::validate() const {
  GroupHom one = GroupHom::identity(underlying);
  if (!(w * w == one)) throw AlgebraError("Mackey functor: w is not an involution");
  if (!(res * tr == one + w)) throw AlgebraError("Mackey functor: res∘tr != 1 + w");
  if (!(w * res == res)) throw AlgebraError("Mackey functor: w∘res != res");
  if (!(tr * w == tr)) throw AlgebraError("Mackey functor: tr∘w != tr");
}

C2Mackey constant_mackey(const FinAbGroup& g) {
  C2Mackey m{g, GroupHom::identity(g), g, GroupHom::identity(g), GroupHom::scalar(g, 2), "constant(" + g.to_string() + ")"};
  m.validate();
  return m;
}

C2Mackey fixedpoint_mackey(const FinAbGroup& g, const GroupHom& w) {
  GroupHom one = GroupHom::identity(g);
  if (!(w * w == one)) throw AlgebraError("fixed-point Mackey functor: w is not an involution");
  SubgroupResult fixed = kernel(one - w);
  GroupHom tr = lift_through_injection(fixed.inclusion, one + w);
  C2Mackey m{g, w, fixed.group, fixed.inclusion, tr, "fixedpoints(" + g.to_string() + ")"};
  m.validate();
  return m;
}

void MackeyMap::validate(const C2Mackey& src, const C2Mackey& tgt) const {
  if (!(underlying * src.w == tgt.w * underlying)) throw AlgebraError("Mackey map: not equivariant");
  if (!(fixed * src.tr == tgt.tr * underlying)) throw AlgebraError("Mackey map: does not commute with transfer");
  if (!(underlying * src.res == tgt.res * fixed)) throw AlgebraError("Mackey map: does not commute with restriction");
}

namespace {

void check_weight(int k) {
  if (k < 0 || k % 2 != 0) throw Refusal("even-weight", "representation spheres are built for even k >= 0 only, got " + std::to_string(k));
}

}  // namespace

ChainComplex rep_sphere_complex(const C2Mackey& m, int k) {
  check_weight(k);
  m.validate();
  std::vector<FinAbGroup> groups{m.fixed};
  std::vector<GroupHom> diffs;
  GroupHom one = GroupHom::identity(m.underlying);
  for (int j = 1; j <= k; ++j) {
    groups.push_back(m.underlying);
    if (j == 1)
      diffs.push_back(m.tr);
    else
      diffs.push_back(j % 2 == 0 ? one - m.w : one + m.w);
  }
  return ChainComplex(k, groups, diffs);
}

ChainMap rep_sphere_map(const MackeyMap& f, const C2Mackey& src, const C2Mackey& tgt, int k) {
  f.validate(src, tgt);
  ChainMap cm{rep_sphere_complex(src, k), rep_sphere_complex(tgt, k), {}};
  cm.components.emplace(k, f.fixed);
  for (int i = k + 1; i <= 2 * k; ++i) cm.components.emplace(i, f.underlying);
  cm.validate();
  return cm;
}

GradedGroups rep_sphere_homotopy(const C2Mackey& m, int k) {
  ChainComplex c = rep_sphere_complex(m, k);
  GradedGroups g(k, 2 * k);
  for (int i = k; i <= 2 * k; ++i) g.set(i, homology(c, i));
  return g;
}

C2Mackey norm_source_mackey() {
  FinAbGroup g{2, 0};  // coordinates (x in Z/2, a in Z)
  GroupHom w(g, g, IntMatrix{{1, 1}, {0, 1}});  // (x, a) -> ([a] + x, a)
  C2Mackey m = fixedpoint_mackey(g, w);
  m.name = "fixedpoints(Z+Z/2, w(a,x)=(a,[a]+x))";
  return m;
}

MackeyMap norm_map() {
  C2Mackey src = norm_source_mackey();
  C2Mackey tgt = constant_mackey(FinAbGroup{0});
  GroupHom under(src.underlying, tgt.underlying, IntMatrix{{0, 2}});  // (x, a) -> 2a
  // On fixed points the map is the restriction of the underlying one.
  GroupHom fixed = lift_through_injection(tgt.res, under * src.res);
  MackeyMap f{under, fixed};
  f.validate(src, tgt);
  return f;
}

GradedGroups norm_cofiber_homotopy(int k) {
  check_weight(k);
  C2Mackey src = norm_source_mackey();
  C2Mackey tgt = constant_mackey(FinAbGroup{0});
  ChainComplex cone = mapping_cone(rep_sphere_map(norm_map(), src, tgt, k));
  GradedGroups g(k, 2 * k + 1);
  for (int i = k; i <= 2 * k + 1; ++i) g.set(i, homology(cone, i));
  return g;
}

GradedGroups suspend(const GradedGroups& g, int shift) {
  GradedGroups out(g.lo() + shift, g.hi() + shift);
  for (const auto& [d, grp] : g.groups()) out.set(d + shift, grp);
  out.periodicity = g.periodicity;
  return out;
}

}  // namespace tcrcalc
