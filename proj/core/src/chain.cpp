#include "tcrcalc/chain.hpp"
#include "tcrcalc/errors.hpp"

#include <algorithm>

namespace tcrcalc {

ChainComplex::ChainComplex(int lo, std::vector<FinAbGroup> groups, std::vector<GroupHom> differentials)
    : lo_(lo), groups_(std::move(groups)), diffs_(std::move(differentials)) {
  std::size_t expected = groups_.empty() ? 0 : groups_.size() - 1;
  if (diffs_.size() != expected) throw AlgebraError("chain complex: wrong number of differentials");
  for (int i = lo_ + 1; i <= hi(); ++i) {
    const GroupHom& d = diffs_[static_cast<std::size_t>(i - lo_ - 1)];
    if (!(d.source() == group(i)) || !(d.target() == group(i - 1)))
      throw AlgebraError("chain complex: differential has the wrong type");
  }
  for (int i = lo_ + 2; i <= hi(); ++i)
    if (!(differential(i - 1) * differential(i)).is_zero()) throw AlgebraError("chain complex: d∘d is not zero");
}

FinAbGroup ChainComplex::group(int i) const {
  if (i < lo_ || i > hi()) return FinAbGroup();
  return groups_[static_cast<std::size_t>(i - lo_)];
}

GroupHom ChainComplex::differential(int i) const {
  if (i <= lo_ || i > hi()) return GroupHom::zero(group(i), group(i - 1));
  return diffs_[static_cast<std::size_t>(i - lo_ - 1)];
}

ChainComplex ChainComplex::shift(int k) const {
  std::vector<GroupHom> d = diffs_;
  if (k % 2 != 0)
    for (auto& x : d) x = -x;
  return ChainComplex(lo_ + k, groups_, d);
}

GroupHom ChainMap::at(int i) const {
  auto it = components.find(i);
  if (it != components.end()) return it->second;
  return GroupHom::zero(source.group(i), target.group(i));
}

void ChainMap::validate() const {
  int lo = std::min(source.lo(), target.lo());
  int hi = std::max(source.hi(), target.hi()) + 1;
  for (const auto& [i, g] : components)
    if (!(g.source() == source.group(i)) || !(g.target() == target.group(i)))
      throw AlgebraError("chain map: component has the wrong type");
  for (int i = lo; i <= hi; ++i)
    if (!(at(i - 1) * source.differential(i) == target.differential(i) * at(i)))
      throw AlgebraError("chain map: square does not commute");
}

HomologyData homology_data(const ChainComplex& c, int i) {
  SubgroupResult z = kernel(c.differential(i));
  GroupHom b = lift_through_injection(z.inclusion, c.differential(i + 1));
  QuotientResult h = cokernel(b);
  return {h.group, z, h.projection};
}

FinAbGroup homology(const ChainComplex& c, int i) { return homology_data(c, i).group; }

GroupHom induced_map(const HomologyData& src, const HomologyData& tgt, const GroupHom& component) {
  GroupHom on_cycles = lift_through_injection(tgt.cycles.inclusion, component * src.cycles.inclusion);
  return descend_through_surjection(src.projection, tgt.projection * on_cycles);
}

GroupHom induced_on_homology(const ChainMap& f, int i) {
  return induced_map(homology_data(f.source, i), homology_data(f.target, i), f.at(i));
}

namespace {

struct ConeParts {
  int lo = 0, hi = -1;
  std::vector<DirectSum> sums;  // sums[i - lo] = C_{i-1} ⊕ D_i
  const DirectSum& at(int i) const { return sums[static_cast<std::size_t>(i - lo)]; }
};

ConeParts cone_parts(const ChainMap& f) {
  ConeParts p;
  if (f.source.empty() && f.target.empty()) return p;
  p.lo = f.source.empty() ? f.target.lo() : f.target.empty() ? f.source.lo() + 1 : std::min(f.source.lo() + 1, f.target.lo());
  p.hi = f.source.empty() ? f.target.hi() : f.target.empty() ? f.source.hi() + 1 : std::max(f.source.hi() + 1, f.target.hi());
  for (int i = p.lo; i <= p.hi; ++i) p.sums.push_back(direct_sum({f.source.group(i - 1), f.target.group(i)}));
  return p;
}

}  // namespace

ChainComplex mapping_cone(const ChainMap& f) {
  f.validate();
  ConeParts p = cone_parts(f);
  std::vector<FinAbGroup> groups;
  std::vector<GroupHom> diffs;
  for (int i = p.lo; i <= p.hi; ++i) {
    groups.push_back(p.at(i).group);
    if (i == p.lo) continue;
    GroupHom dc = -f.source.differential(i - 1);
    GroupHom zero = GroupHom::zero(f.target.group(i), f.source.group(i - 2));
    diffs.push_back(block_hom(p.at(i), p.at(i - 1), {{dc, zero}, {f.at(i - 1), f.target.differential(i)}}));
  }
  return ChainComplex(p.lo, groups, diffs);
}

bool cone_sequence_exact(const ChainMap& f, int lo, int hi) {
  ChainComplex cone = mapping_cone(f);
  ConeParts p = cone_parts(f);
  auto inj = [&](int i) {
    if (i < p.lo || i > p.hi) return GroupHom::zero(f.target.group(i), cone.group(i));
    return p.at(i).injections[1];
  };
  auto proj = [&](int i) {
    if (i < p.lo || i > p.hi) return GroupHom::zero(cone.group(i), f.source.group(i - 1));
    return p.at(i).projections[0];
  };
  auto a = [&](int i) { return induced_map(homology_data(f.source, i), homology_data(f.target, i), f.at(i)); };
  for (int i = lo; i <= hi; ++i) {
    HomologyData hd = homology_data(f.target, i);
    HomologyData hk = homology_data(cone, i);
    HomologyData hc1 = homology_data(f.source, i - 1);
    GroupHom ai = a(i);
    GroupHom bi = induced_map(hd, hk, inj(i));
    GroupHom ci = induced_map(hk, hc1, proj(i));
    if (!is_exact_at(ai, bi) || !is_exact_at(bi, ci) || !is_exact_at(ci, a(i - 1))) return false;
  }
  return true;
}

}  // namespace tcrcalc
