#include "tcrcalc/errors.hpp"
#include "tcrcalc/tcr.hpp"

namespace tcrcalc {

PerfectChar2 perfect_char2(const FinRing& k) {
  if (k.characteristic() != 2) throw Refusal("perfect-char-2", k.spec() + " does not have characteristic 2");
  FrobeniusMap fr = frobenius(k, 2);
  if (!fr.bijective) throw Refusal("perfect-char-2", "squaring is not bijective on " + k.spec());
  PerfectChar2 out;
  out.ring = k;
  out.chart = k.additive_chart();
  out.square = out.chart.hom_or_throw(out.chart, [&](Elem x) { return fr.map[x]; });
  out.sqrt = inverse(out.square);
  return out;
}

std::vector<SummandLabel> degree_labels(int d) {
  std::vector<SummandLabel> out;
  for (int n = 0; n <= d; ++n) out.push_back({n, d - n});
  return out;
}

namespace {

FinAbGroup power(const FinAbGroup& g, std::size_t count) {
  IntVector inv;
  for (std::size_t i = 0; i < count; ++i) inv.insert(inv.end(), g.invariants().begin(), g.invariants().end());
  return FinAbGroup(inv);
}

// Square blocks of size e, addressed by (target summand, source summand).
class BlockBuilder {
 public:
  BlockBuilder(std::size_t tgt, std::size_t src, std::size_t e) : m_(tgt * e, src * e), e_(e) {}
  void put(std::size_t t, std::size_t s, const IntMatrix& b) {
    for (std::size_t i = 0; i < e_; ++i)
      for (std::size_t j = 0; j < e_; ++j) m_(t * e_ + i, s * e_ + j) += b(i, j);
  }
  const IntMatrix& matrix() const { return m_; }

 private:
  IntMatrix m_;
  std::size_t e_;
};

GroupHom swap_hom(const PerfectChar2& k, int d) {
  const std::size_t c = static_cast<std::size_t>(d + 1), e = k.dim();
  FinAbGroup y = power(k.chart.group(), c);
  BlockBuilder b(c, c, e);
  IntMatrix id = IntMatrix::identity(e);
  for (std::size_t n = 0; n < c; ++n) b.put(c - 1 - n, n, id);
  return GroupHom(y, y, b.matrix());
}

// Sum of inj_i ∘ maps[i] into a direct sum.
GroupHom into_sum(const DirectSum& s, const std::vector<GroupHom>& maps) {
  GroupHom out = GroupHom::zero(maps.front().source(), s.group);
  for (std::size_t i = 0; i < maps.size(); ++i) out = out + s.injections[i] * maps[i];
  return out;
}

}  // namespace

FixedPointData fixed_point_data(const PerfectChar2& k, int d) {
  const std::size_t c = static_cast<std::size_t>(d + 1), e = k.dim();
  FixedPointData out;
  out.fixed = power(k.chart.group(), c);
  out.underlying = power(k.chart.group(), c);
  IntMatrix id = IntMatrix::identity(e);
  BlockBuilder r(c, c, e), f(c, c, e);
  // Index n carries (n, d-n): a fixed summand when n >= d-n, an induced one otherwise.
  for (std::size_t n = 0; n < c; ++n) {
    const std::size_t m = c - 1 - n;
    if (n >= m) r.put(n, n, k.sqrt.matrix());
    if (n == m) f.put(n, n, id);
    if (n < m) {
      f.put(n, n, id);
      f.put(m, n, id);
    }
  }
  out.r = GroupHom(out.fixed, out.underlying, r.matrix());
  out.f = GroupHom(out.fixed, out.underlying, f.matrix());
  out.sigma = swap_hom(k, d);
  return out;
}

Tower closed_form_tower(const PerfectChar2& k, unsigned levels, int max_degree) {
  Tower t;
  t.max_degree = max_degree;
  const std::size_t e = k.dim();
  IntMatrix id = IntMatrix::identity(e);
  for (unsigned l = 1; l <= levels; ++l) {
    TowerStage s;
    for (int d = 0; d <= max_degree; ++d) {
      const std::size_t c = static_cast<std::size_t>(d + 1);
      FinAbGroup g = power(k.chart.group(), c);
      s.groups[d] = g;
      s.sigma[d] = swap_hom(k, d);
      if (l == 1) continue;
      BlockBuilder r(c, c, e), f(c, c, e);
      for (std::size_t n = 0; n < c; ++n) {
        const std::size_t m = c - 1 - n;
        if (n == m) {
          r.put(n, n, k.sqrt.matrix());
          f.put(n, n, id);
        } else if (n < m) {
          f.put(n, n, id);
          f.put(m, n, id);
        }
      }
      s.R[d] = GroupHom(g, g, r.matrix());
      s.F[d] = GroupHom(g, g, f.matrix());
    }
    t.stages.push_back(std::move(s));
  }
  return t;
}

Tower oracle_tower(const PerfectChar2& k, unsigned levels, int max_degree, const Budget& budget) {
  Tower t;
  t.max_degree = max_degree;
  std::map<int, FixedPointData> fp;
  for (int d = 0; d <= max_degree; ++d) fp[d] = fixed_point_data(k, d);

  // Per degree: inclusion of level l into X ⊕ X ⊕ (level l-1), and F^{l-1} to level 1.
  std::vector<std::map<int, GroupHom>> incl(levels + 1), fiter(levels + 1);
  for (unsigned l = 1; l <= levels; ++l) {
    budget.check();
    TowerStage s;
    for (int d = 0; d <= max_degree; ++d) {
      const FixedPointData& x = fp[d];
      if (l == 1) {
        s.groups[d] = x.underlying;
        s.sigma[d] = x.sigma;
        fiter[1][d] = GroupHom::identity(x.underlying);
        continue;
      }
      const TowerStage& prev = t.stages[l - 2];
      const FinAbGroup& pg = prev.groups.at(d);
      DirectSum amb = direct_sum({x.fixed, x.fixed, pg});
      DirectSum yy = direct_sum({x.underlying, x.underlying});
      const GroupHom& fprev = fiter[l - 1][d];
      GroupHom zx = GroupHom::zero(x.fixed, x.underlying);
      GroupHom diff = block_hom(amb, yy,
                                {{x.r, zx, -fprev},
                                 {zx, x.sigma * x.r, -(x.sigma * fprev * prev.sigma.at(d))}});
      if (!is_surjective(diff))
        throw Refusal("mayer-vietoris-surjectivity",
                      "difference map not surjective at level " + std::to_string(l) + ", degree " + std::to_string(d));
      SubgroupResult ker = kernel(diff);
      const GroupHom& i = ker.inclusion;
      s.groups[d] = ker.group;
      incl[l][d] = i;

      GroupHom px = amb.projections[0] * i, py = amb.projections[1] * i, pz = amb.projections[2] * i;
      s.R[d] = pz;
      GroupHom swapped = into_sum(amb, {py, px, prev.sigma.at(d) * pz});
      s.sigma[d] = lift_through_injection(i, swapped);
      if (l == 2) {
        s.F[d] = x.f * px;
      } else {
        const GroupHom& iprev = incl[l - 1][d];
        DirectSum pamb = direct_sum({x.fixed, x.fixed, t.stages[l - 3].groups.at(d)});
        GroupHom image = into_sum(pamb, {px, px, prev.F.at(d) * pz});
        s.F[d] = lift_through_injection(iprev, image);
      }
      fiter[l][d] = fiter[l - 1][d] * s.F[d];
    }
    t.stages.push_back(std::move(s));
  }
  return t;
}

TowerLevel Tower::level(unsigned l, Window window) const {
  if (l < 1 || l + 1 > stages.size()) throw AlgebraError("tower level out of range");
  TowerLevel out;
  out.level = l;
  out.window = window;
  const TowerStage& s = stages[l - 1];
  const TowerStage& up = stages[l];
  for (int d = std::max(window.lo, 0); d <= std::min(window.hi, max_degree); ++d) {
    out.groups[d] = s.groups.at(d);
    out.next_groups[d] = up.groups.at(d);
    out.R[d] = up.R.at(d);
    out.F[d] = up.F.at(d);
    out.sigma[d] = s.sigma.at(d);
  }
  return out;
}

namespace {

void check_window(Window w) {
  if (w.lo > w.hi) throw ParseError("empty degree window");
}

}  // namespace

TowerLevel trr_phi_tower(const FinRing& k, unsigned level, Window window) {
  check_window(window);
  if (level < 1) throw ParseError("tower level must be at least 1");
  PerfectChar2 pk = perfect_char2(k);
  Tower t = closed_form_tower(pk, level + 1, std::max(window.hi, 0));
  TowerLevel out = t.level(level, window);
  for (auto& [d, g] : out.groups) out.labels[d] = degree_labels(d);
  return out;
}

TowerLevel trr_phi_oracle(const FinRing& k, unsigned level, Window window, const Budget& budget) {
  check_window(window);
  if (level < 1) throw ParseError("tower level must be at least 1");
  PerfectChar2 pk = perfect_char2(k);
  Tower t = oracle_tower(pk, level + 1, std::max(window.hi, 0), budget);
  return t.level(level, window);
}

TowerComparison compare_towers(const Tower& oracle, const Tower& closed) {
  TowerComparison out;
  const std::size_t levels = std::min(oracle.stages.size(), closed.stages.size());
  const int maxd = std::min(oracle.max_degree, closed.max_degree);
  auto fail = [&](const std::string& msg) {
    out.ok = false;
    out.failures.push_back(msg);
  };
  std::map<int, GroupHom> phi;
  for (int d = 0; d <= maxd; ++d) {
    phi[d] = GroupHom::identity(closed.stages[0].groups.at(d));
    if (!(oracle.stages[0].groups.at(d) == closed.stages[0].groups.at(d))) fail("level 1 groups differ in degree " + std::to_string(d));
    if (!(oracle.stages[0].sigma.at(d) == closed.stages[0].sigma.at(d))) fail("level 1 involutions differ in degree " + std::to_string(d));
  }
  out.base_change.push_back(phi);
  for (std::size_t l = 1; l < levels && out.ok; ++l) {
    const TowerStage& o = oracle.stages[l];
    const TowerStage& c = closed.stages[l];
    std::map<int, GroupHom> next;
    for (int d = 0; d <= maxd; ++d) {
      const std::string where = " at level " + std::to_string(l + 1) + ", degree " + std::to_string(d);
      if (!(o.groups.at(d) == c.groups.at(d))) {
        fail("groups differ" + where + ": " + o.groups.at(d).to_string() + " vs " + c.groups.at(d).to_string());
        continue;
      }
      const FinAbGroup& lower = closed.stages[l - 1].groups.at(d);
      DirectSum three = direct_sum({lower, lower, lower});
      GroupHom stacked = into_sum(three, {c.R.at(d), c.F.at(d), c.F.at(d) * c.sigma.at(d)});
      if (!is_injective(stacked)) {
        fail("closed-form maps R, F, Fσ not jointly injective" + where);
        continue;
      }
      const GroupHom& p = phi.at(d);
      GroupHom target = into_sum(three, {p * o.R.at(d), p * o.F.at(d), p * o.F.at(d) * o.sigma.at(d)});
      GroupHom candidate;
      try {
        candidate = lift_through_injection(stacked, target);
      } catch (const AlgebraError&) {
        fail("no base change intertwines R and F" + where);
        continue;
      }
      if (!is_isomorphism(candidate)) {
        fail("base change is not invertible" + where);
        continue;
      }
      if (!(c.sigma.at(d) * candidate == candidate * o.sigma.at(d))) {
        fail("involutions differ after base change" + where);
        continue;
      }
      next[d] = candidate;
    }
    phi = next;
    out.base_change.push_back(next);
  }
  return out;
}

namespace {

bool same_subgroup(const GroupHom& a, const GroupHom& b) {
  try {
    lift_through_injection(a, b);
    lift_through_injection(b, a);
  } catch (const AlgebraError&) {
    return false;
  }
  return true;
}

// R^j from level l + j down to level l.
GroupHom iterate_R(const Tower& t, unsigned l, unsigned j, int d) {
  GroupHom out = GroupHom::identity(t.stages[l + j - 1].groups.at(d));
  for (unsigned i = l + j; i > l; --i) out = t.stages[i - 1].R.at(d) * out;
  return out;
}

}  // namespace

TowerLimit trr_phi_limit(const FinRing& k, Window window, unsigned depth, const Budget& budget) {
  check_window(window);
  if (depth < 4) throw ParseError("limit needs a depth of at least 4 levels");
  if (depth > budget.max_depth) throw Refusal("depth-bound", "depth " + std::to_string(depth) + " exceeds the bound");
  PerfectChar2 pk = perfect_char2(k);
  const int maxd = std::max(window.hi, 0);
  Tower t = oracle_tower(pk, depth, maxd, budget);
  TowerLimit out;
  out.depth = depth;
  out.groups = GradedGroups(window.lo, window.hi);
  out.frobenius_is_square = true;
  const std::size_t e = pk.dim();
  for (int d = std::max(window.lo, 0); d <= window.hi; ++d) {
    std::vector<SubgroupResult> level1, level2;
    for (unsigned j = 0; j < depth; ++j) level1.push_back(image(iterate_R(t, 1, j, d)));
    for (unsigned j = 0; j + 1 < depth; ++j) level2.push_back(image(iterate_R(t, 2, j, d)));
    const std::size_t a = level1.size(), b = level2.size();
    if (!same_subgroup(level1[a - 1].inclusion, level1[a - 2].inclusion) ||
        !same_subgroup(level1[a - 2].inclusion, level1[a - 3].inclusion) ||
        !same_subgroup(level2[b - 1].inclusion, level2[b - 2].inclusion))
      throw Refusal("mittag-leffler", "eventual images not stable by level " + std::to_string(depth) + " in degree " +
                                          std::to_string(d));
    const GroupHom& e1 = level1[a - 1].inclusion;
    const GroupHom& e2 = level2[b - 1].inclusion;
    GroupHom r = lift_through_injection(e1, t.stages[1].R.at(d) * e2);
    if (!is_isomorphism(r)) throw Refusal("mittag-leffler", "R is not invertible on eventual images in degree " + std::to_string(d));
    GroupHom f = lift_through_injection(e1, t.stages[1].F.at(d) * e2);
    GroupHom frob = f * inverse(r);
    out.groups.set(d, level1[a - 1].group);
    out.frobenius[d] = frob;
    out.to_level1[d] = e1;

    if (d % 2 != 0) {
      if (!level1[a - 1].group.is_trivial()) out.frobenius_is_square = false;
      continue;
    }
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < e; ++i) rows.push_back(static_cast<std::size_t>(d / 2) * e + i);
    GroupHom proj(e1.target(), pk.chart.group(), IntMatrix::identity(e1.target().rank()).select_rows(rows));
    GroupHom coord = proj * e1;
    if (!is_isomorphism(coord) || !(coord * frob == pk.square * coord)) out.frobenius_is_square = false;
  }
  return out;
}

}  // namespace tcrcalc
