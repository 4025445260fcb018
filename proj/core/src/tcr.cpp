#include "tcrcalc/chain.hpp"
#include "tcrcalc/errors.hpp"
#include "tcrcalc/tcr.hpp"

#include <set>

namespace tcrcalc {

namespace {

void check_window(Window w) {
  if (w.lo > w.hi) throw ParseError("empty degree window");
}

FinAbGroup free_group(std::size_t n) { return FinAbGroup(IntVector(n, Integer(0))); }

// A short generating list for the subgroup spanned by gens, found by closing up in the ring.
std::vector<Elem> short_generators(const FinRing& r, const std::vector<Elem>& gens, const Budget& budget) {
  std::vector<bool> in(r.size(), false);
  std::vector<Elem> members{r.zero()};
  in[r.zero()] = true;
  std::vector<Elem> out;
  for (Elem g : gens) {
    if (in[g]) continue;
    budget.check();
    out.push_back(g);
    // Close under adding g; members stays a subgroup since the group is finite.
    std::vector<Elem> frontier = members;
    while (!frontier.empty()) {
      std::vector<Elem> next;
      for (Elem m : frontier) {
        Elem s = r.add(m, g);
        if (!in[s]) {
          in[s] = true;
          members.push_back(s);
          next.push_back(s);
        }
      }
      frontier = std::move(next);
    }
  }
  return out;
}

QuotientResult quotient_by(const FinRing& r, const AdditiveChart& chart, const std::vector<Elem>& gens,
                           const Budget& budget) {
  std::vector<Elem> small = short_generators(r, gens, budget);
  std::vector<IntVector> cols;
  for (Elem g : small) cols.push_back(chart.coords(g));
  const FinAbGroup& g = chart.group();
  return cokernel(GroupHom(free_group(cols.size()), g, IntMatrix::from_columns(g.rank(), cols)));
}

FinAbGroup sum_of(const std::vector<FinAbGroup>& parts) {
  std::vector<FinAbGroup> nonzero;
  for (const auto& p : parts)
    if (!p.is_trivial()) nonzero.push_back(p);
  if (nonzero.empty()) return FinAbGroup();
  if (nonzero.size() == 1) return nonzero.front();
  return direct_sum(nonzero).group;
}

}  // namespace

GradedGroups tcr_phi_char2_field(const FinRing& k, Window window) {
  check_window(window);
  PerfectChar2 pk = perfect_char2(k);
  GradedHom r, f;
  for (int d = std::max(window.lo, 0); d <= window.hi + 1; ++d) {
    if (d < 0) continue;
    FixedPointData x = fixed_point_data(pk, d);
    r[d] = x.r;
    f[d] = x.f;
  }
  auto kc = graded_kernel_of_difference(r, f);
  GradedGroups out(window.lo, window.hi);
  // Long exact sequence of the fibre: 0 -> coker_{d+1} -> π_d -> ker_d -> 0.
  for (int d = window.lo; d <= window.hi; ++d) {
    std::vector<FinAbGroup> parts;
    if (kc.count(d + 1)) parts.push_back(kc.at(d + 1).cokernel.group);
    if (kc.count(d)) parts.push_back(kc.at(d).kernel.group);
    out.set(d, sum_of(parts));
  }
  out.periodicity = Periodicity{2, "ker(1 - sqrt) in even degrees >= 0, k/(x + x^2) in odd degrees >= -1"};
  return out;
}

GradedGroups tcr_phi_perfect_algebra(const FinRing& a, Window window) {
  check_window(window);
  PerfectChar2 pa = perfect_char2(a);
  GroupHom h = GroupHom::identity(pa.chart.group()) + pa.square;
  FinAbGroup ker = kernel(h).group, coker = cokernel(h).group;
  GradedGroups out(window.lo, window.hi);
  for (int d = window.lo; d <= window.hi; ++d) {
    if (d < -1) continue;
    out.set(d, d % 2 == 0 ? ker : coker);
  }
  out.periodicity = Periodicity{2, "ker(1 + sq) in even degrees >= 0, coker(1 + sq) in odd degrees >= -1"};
  return out;
}

// ------------------------------------------------------------------ torsion-free towers

namespace {

struct TorsionFreeLevel {
  FinRing ring;
  AdditiveChart chart;
  std::vector<Elem> to_base;  // reduction to level 1
  QuotientResult q1;          // B / <b + b^2>
  QuotientResult q4;          // B / <4(b + b^2)>
  SubgroupResult k4;          // kernel of pr + pr^2 on q4
};

}  // namespace

TorsionFreeResult tcr_phi_torsionfree(const ProRing& b, Window window, unsigned depth, const Budget& budget) {
  check_window(window);
  const unsigned top = std::min({depth, b.max_level(), budget.max_depth});
  if (top < 2) throw Refusal("stabilization", "need at least two truncation levels");
  FinRing base = b.level(1).ring();
  PerfectChar2 pb = perfect_char2(base);
  GroupHom frob1 = GroupHom::identity(pb.chart.group()) + pb.square;

  std::vector<TorsionFreeLevel> levels;
  std::vector<std::vector<Elem>> transitions;  // transitions[N-1]: level N+1 -> N
  auto build = [&](unsigned n) {
    TorsionFreeLevel lv;
    lv.ring = b.level(n).ring();
    budget.require_enum(lv.ring.size(), "tower level");
    lv.chart = lv.ring.additive_chart();
    const FinRing& r = lv.ring;
    if (n == 1) {
      lv.to_base.resize(r.size());
      for (Elem x = 0; x < r.size(); ++x) lv.to_base[x] = x;
    } else {
      const auto& t = transitions[n - 2];
      const auto& prev = levels[n - 2].to_base;
      lv.to_base.resize(r.size());
      for (Elem x = 0; x < r.size(); ++x) lv.to_base[x] = prev[t[x]];
    }
    std::vector<Elem> g1, g4;
    for (Elem x = 0; x < r.size(); ++x) {
      Elem s = r.add(x, r.mul(x, x));
      g1.push_back(s);
      g4.push_back(r.mul(r.from_int(4), s));
    }
    lv.q1 = quotient_by(r, lv.chart, g1, budget);
    lv.q4 = quotient_by(r, lv.chart, g4, budget);
    GroupHom h = lv.chart.hom_or_throw(pb.chart, [&](Elem x) {
      Elem y = lv.to_base[x];
      return base.add(y, base.mul(y, y));
    });
    lv.k4 = kernel(descend_through_surjection(lv.q4.projection, h));
    return lv;
  };

  levels.push_back(build(1));
  for (unsigned n = 1; n < top; ++n) {
    budget.check();
    transitions.push_back(b.transition(n));
    levels.push_back(build(n + 1));
    const TorsionFreeLevel& lo = levels[n - 1];
    const TorsionFreeLevel& hi = levels[n];
    const auto& t = transitions.back();
    // Multiplication by 2 must be injective in the limit: 2-torsion at level n+1 dies at level n.
    for (Elem x = 0; x < hi.ring.size(); ++x)
      if (hi.ring.add(x, x) == hi.ring.zero() && t[x] != lo.ring.zero())
        throw Refusal("two-torsion-free", "element " + hi.ring.name(x) + " of " + hi.ring.spec() + " is 2-torsion");
    GroupHom th = hi.chart.hom_or_throw(lo.chart, [&](Elem x) { return t[x]; });
    GroupHom m1 = descend_through_surjection(hi.q1.projection, lo.q1.projection * th);
    GroupHom m4 = descend_through_surjection(hi.q4.projection, lo.q4.projection * th);
    GroupHom mk = lift_through_injection(lo.k4.inclusion, m4 * hi.k4.inclusion);
    if (!is_isomorphism(m1) || !is_isomorphism(mk)) continue;

    TorsionFreeResult out;
    out.level = n;
    out.b_mod_square_sum = lo.q1.group;
    out.kernel_pr = lo.k4.group;
    out.kernel_frobenius = kernel(frob1).group;
    out.groups = GradedGroups(window.lo, window.hi);
    for (int d = window.lo; d <= window.hi; ++d) {
      if (d < -1) continue;
      switch (((d % 4) + 4) % 4) {
        case 3: out.groups.set(d, out.b_mod_square_sum); break;
        case 0: out.groups.set(d, out.kernel_pr); break;
        case 1: out.groups.set(d, out.kernel_frobenius); break;
        default: break;
      }
    }
    out.groups.periodicity = Periodicity{4, "B/<b+b^2>, ker(pr+pr^2), ker(1+sq on B/2), 0 in degrees 4l-1, 4l, 4l+1, 4l+2"};
    return out;
  }
  throw Refusal("stabilization", "transition maps not isomorphisms below level " + std::to_string(top));
}

// ------------------------------------------------------------------ chain-level model over Z

Integer bockstein_class() {
  FinAbGroup z2{2}, z8{8}, z4{4};
  GroupHom incl(z2, z8, IntMatrix{{4}});
  GroupHom proj(z8, z4, IntMatrix{{1}});
  // Lift the generator of Z/4, push through the relation 4 of Z --4--> Z, land in Z/2.
  IntVector lift = *preimage(proj, {Integer(1)});
  IntVector rel{Integer(4) * lift[0]};
  auto c = preimage(incl, z8.reduce(rel));
  if (!c) throw AlgebraError("Bockstein: relation does not land in the kernel");
  return (*c)[0];
}

GradedGroups tcr_phi_Z_oracle(Window window) {
  check_window(window);
  const Integer c = bockstein_class();
  // One block: source Z/4 ⊕ ΣF_2, target F_2 ⊕ ΣF_2, both as complexes of free groups in degrees 0..2.
  // Degree 1 coordinates are (top of the degree-0 part, bottom of the suspended part).
  const int blocks = std::max(0, (window.hi + 2) / 4 + 1);
  const int top = 4 * (blocks - 1) + 2;
  auto deg_count = [](int j) { return j == 1 ? 2 : (j == 0 || j == 2 ? 1 : 0); };
  auto layout = [&](int i) {
    std::vector<std::pair<int, int>> parts;  // (block, local degree)
    for (int n = 0; n < blocks; ++n) {
      int j = i - 4 * n;
      if (deg_count(j) > 0) parts.emplace_back(n, j);
    }
    return parts;
  };
  auto rank_at = [&](int i) {
    std::size_t r = 0;
    for (auto [n, j] : layout(i)) r += static_cast<std::size_t>(deg_count(j));
    return r;
  };
  // Local differentials d_j : degree j -> degree j-1 and the degree-1 component of the map.
  auto local_d = [](int j, long bottom) {
    if (j == 1) return IntMatrix{{bottom, 0}};
    return IntMatrix{{0}, {2}};  // j == 2
  };
  auto build = [&](long bottom) {
    std::vector<FinAbGroup> groups;
    std::vector<GroupHom> diffs;
    for (int i = 0; i <= top; ++i) groups.push_back(free_group(rank_at(i)));
    for (int i = 1; i <= top; ++i) {
      IntMatrix m(rank_at(i - 1), rank_at(i));
      std::size_t col = 0;
      for (auto [n, j] : layout(i)) {
        if (j >= 1) {
          // Row offset of block n in degree i-1.
          std::size_t row = 0;
          for (auto [n2, j2] : layout(i - 1)) {
            if (n2 == n) break;
            row += static_cast<std::size_t>(deg_count(j2));
          }
          IntMatrix b = local_d(j, bottom);
          for (std::size_t a = 0; a < b.rows(); ++a)
            for (std::size_t e = 0; e < b.cols(); ++e) m(row + a, col + e) = b(a, e);
        }
        col += static_cast<std::size_t>(deg_count(j));
      }
      diffs.push_back(GroupHom(groups[i], groups[i - 1], m));
    }
    return ChainComplex(0, groups, diffs);
  };
  ChainComplex src = build(4), tgt = build(2);
  ChainMap m{src, tgt, {}};
  for (int i = 0; i <= top; ++i) {
    IntMatrix comp(rank_at(i), rank_at(i));
    std::size_t off = 0;
    for (auto [n, j] : layout(i)) {
      if (j == 1) comp(off + 1, off) = c;
      off += static_cast<std::size_t>(deg_count(j));
    }
    m.components[i] = GroupHom(src.group(i), tgt.group(i), comp);
  }
  m.validate();
  ChainComplex cone = mapping_cone(m);
  GradedGroups out(window.lo, window.hi);
  for (int d = window.lo; d <= window.hi; ++d) out.set(d, homology(cone, d + 1));
  out.periodicity = Periodicity{4, "Z/2, Z/8, Z/2, 0 in degrees 4l-1, 4l, 4l+1, 4l+2"};
  return out;
}

// ------------------------------------------------------------------ odd primes

OddResult tcr_phi_odd(const InvRing& a, unsigned p, const Budget& budget) {
  if (p % 2 == 0) throw ParseError("tcr_phi_odd needs an odd prime");
  const FinRing& r = a.ring();
  budget.require_enum(r.size(), "ring");
  FixedSubring fs = fixed_subring(a);
  AdditiveChart ca = r.additive_chart(), cf = fs.ring.additive_chart();
  GroupHom tr = ca.hom_or_throw(cf, [&](Elem x) { return fs.transfer[x]; });
  QuotientResult q = cokernel(tr);
  OddResult out;
  out.quotient = q.group;
  out.transfer_surjective = q.group.is_trivial();
  if (out.transfer_surjective) {
    out.vanishes = true;
    return out;
  }
  // a acts on Q through multiplication by a w(a).
  std::map<Elem, GroupHom> action;
  auto act = [&](Elem norm) -> const GroupHom& {
    auto it = action.find(norm);
    if (it != action.end()) return it->second;
    GroupHom mul = cf.hom_or_throw(cf, [&](Elem x) { return fs.ring.mul(norm, x); });
    return action.emplace(norm, descend_through_surjection(q.projection, q.projection * mul)).first->second;
  };
  budget.require_enum(r.size() * r.size(), "action additivity check");
  for (Elem x = 0; x < r.size(); ++x) {
    budget.check();
    for (Elem y = 0; y < r.size(); ++y)
      if (!(act(fs.norm[r.add(x, y)]) == act(fs.norm[x]) + act(fs.norm[y]))) out.action_additive = false;
  }

  const FinAbGroup& qg = q.group;
  const std::size_t qr = qg.rank();
  TensorProduct tp = tensor(qg, qg);
  auto raw = [&](const IntVector& u, const IntVector& v) {
    IntVector t(qr * qr, Integer(0));
    for (std::size_t i = 0; i < qr; ++i)
      for (std::size_t j = 0; j < qr; ++j) t[i * qr + j] = u[i] * v[j];
    return tp.group.reduce(tp.presentation.to_normal.apply(t));
  };
  std::vector<IntVector> rels;
  for (const auto& [norm, h] : action) {
    for (std::size_t i = 0; i < qr; ++i)
      for (std::size_t j = 0; j < qr; ++j) {
        IntVector ei(qr, Integer(0)), ej(qr, Integer(0));
        ei[i] = 1;
        ej[j] = 1;
        IntVector lhs = raw(h.apply(ei), ej), rhs = raw(ei, h.apply(ej));
        for (std::size_t k = 0; k < lhs.size(); ++k) lhs[k] -= rhs[k];
        rels.push_back(lhs);
      }
  }
  out.pi0 = cokernel(GroupHom(free_group(rels.size()), tp.group, IntMatrix::from_columns(tp.group.rank(), rels))).group;
  out.vanishes = out.pi0.is_trivial();
  return out;
}

OddFieldResult tcr_odd_perfect_field(const FinRing& k, unsigned p, unsigned depth, const Budget& budget) {
  if (p % 2 == 0) throw ParseError("tcr_odd_perfect_field needs an odd prime");
  if (depth < 1) throw ParseError("depth must be at least 1");
  if (k.characteristic() != p) throw Refusal("perfect-char-p", k.spec() + " does not have characteristic " + std::to_string(p));
  if (!frobenius(k, p).bijective) throw Refusal("perfect-char-p", "Frobenius is not bijective on " + k.spec());

  std::vector<WittStructure> w;  // w[m-1] = W_m(k)
  for (unsigned m = 1; m <= depth + 1; ++m) w.push_back(witt_structure(k, p, m, budget));
  OddFieldResult out;
  std::vector<SubgroupResult> pi0;
  std::vector<QuotientResult> pim1;
  for (unsigned m = 1; m <= depth; ++m) {
    budget.check();
    GroupHom r = witt_restriction_hom(w[m], w[m - 1]);
    GroupHom f = witt_frobenius_hom(w[m], w[m - 1]);
    GroupHom diff = r - f;
    SubgroupResult ker = kernel(diff);
    pi0.push_back(image(r * ker.inclusion));
    pim1.push_back(cokernel(diff));
    out.pi0_levels.push_back(pi0.back().group);
    out.pim1_levels.push_back(pim1.back().group);
    if (m == 1) continue;
    GroupHom t = witt_restriction_hom(w[m - 1], w[m - 2]);
    GroupHom a = lift_through_injection(pi0[m - 2].inclusion, t * pi0[m - 1].inclusion);
    GroupHom b = descend_through_surjection(pim1[m - 1].projection, pim1[m - 2].projection * t);
    if (!is_surjective(a) || !is_surjective(b) || pi0[m - 1].group.rank() != pi0[m - 2].group.rank() ||
        pim1[m - 1].group.rank() != pim1[m - 2].group.rank())
      throw Refusal("stabilization", "truncations " + std::to_string(m - 1) + " and " + std::to_string(m) + " disagree");
  }
  out.level = depth;
  out.groups = GradedGroups(-2, 2);
  out.groups.set(0, out.pi0_levels.back());
  out.groups.set(-1, out.pim1_levels.back());
  return out;
}

}  // namespace tcrcalc
