#include "tcrcalc/errors.hpp"
#include "tcrcalc/tcr.hpp"

namespace tcrcalc {

namespace {

GreenFunctorData build_green(const InvRing& a, unsigned n, const Budget& budget) {
  GreenFunctorData g;
  g.level = n;
  g.underlying = witt_structure(a.ring(), 2, n + 1, budget);
  g.base_fixed = fixed_subring(a);
  g.fixed = witt_structure(g.base_fixed.ring, 2, n + 1, budget);
  const WittRing& wu = g.underlying.ring;
  const WittRing& wf = g.fixed.ring;

  g.w.resize(wu.size());
  for (Elem e = 0; e < wu.size(); ++e) g.w[e] = wu.encode(witt_functor(wu, a.involution(), wu.decode(e)));
  g.res.resize(wf.size());
  for (Elem e = 0; e < wf.size(); ++e) g.res[e] = wu.encode(witt_functor(wu, g.base_fixed.inclusion, wf.decode(e)));

  g.tr.resize(wu.size());
  for (Elem e = 0; e < wu.size(); ++e) {
    WittVector s = wu.decode(g.underlying.as_ring.add(e, g.w[e]));
    WittVector t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto idx = g.base_fixed.index_of(s[i]);
      if (!idx) throw AlgebraError("transfer leaves the fixed Witt vectors");
      t[i] = *idx;
    }
    g.tr[e] = wf.encode(t);
  }
  g.res_hom = g.fixed.chart.hom_or_throw(g.underlying.chart, [&](Elem x) { return g.res[x]; });
  g.tr_hom = g.underlying.chart.hom_or_throw(g.fixed.chart, [&](Elem x) { return g.tr[x]; });
  return g;
}

}  // namespace

GreenFunctorData pi0_trr_green(const InvRing& a, unsigned n, const Budget& budget) {
  MuReport mu = mu_is_iso(a, budget);
  if (!mu.iso)
    throw Refusal("mu-iso", "multiplication on the norm tensor of " + a.spec() +
                                " is not an isomorphism (kernel " + mu.kernel.to_string() + ", witness " + mu.witness +
                                "), so the levels cannot be Witt vectors of the fixed ring");
  return build_green(a, n, budget);
}

std::vector<std::string> green_axiom_failures(const GreenFunctorData& g) {
  std::vector<std::string> out;
  const FinRing& u = g.underlying.as_ring;
  const FinRing& f = g.fixed.as_ring;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok && (out.empty() || out.back() != what)) out.push_back(what);
  };
  for (Elem x = 0; x < u.size(); ++x) {
    note(g.w[g.w[x]] == x, "W(w) is not an involution");
    note(g.res[g.tr[x]] == u.add(x, g.w[x]), "res∘tr != 1 + W(w)");
    for (Elem y = 0; y < u.size(); ++y) {
      note(g.w[u.add(x, y)] == u.add(g.w[x], g.w[y]), "W(w) is not additive");
      note(g.w[u.mul(x, y)] == u.mul(g.w[y], g.w[x]), "W(w) is not anti-multiplicative");
      note(g.tr[u.add(x, y)] == f.add(g.tr[x], g.tr[y]), "tr is not additive");
    }
  }
  note(g.res[f.one()] == u.one(), "res does not preserve 1");
  for (Elem a = 0; a < f.size(); ++a) {
    note(g.tr[g.res[a]] == f.add(a, a), "tr∘res != 2");
    for (Elem b = 0; b < f.size(); ++b) {
      note(g.res[f.add(a, b)] == u.add(g.res[a], g.res[b]), "res is not additive");
      note(g.res[f.mul(a, b)] == u.mul(g.res[a], g.res[b]), "res is not multiplicative");
    }
    for (Elem x = 0; x < u.size(); ++x) {
      note(g.tr[u.mul(g.res[a], x)] == f.mul(a, g.tr[x]), "Frobenius reciprocity fails (left)");
      note(g.tr[u.mul(x, g.res[a])] == f.mul(g.tr[x], a), "Frobenius reciprocity fails (right)");
    }
  }
  return out;
}

std::vector<std::string> green_restriction_failures(const GreenFunctorData& upper, const GreenFunctorData& lower) {
  std::vector<std::string> out;
  if (upper.level != lower.level + 1) throw AlgebraError("levels are not consecutive");
  const WittRing& uu = upper.underlying.ring;
  const WittRing& uf = upper.fixed.ring;
  const WittRing& lu = lower.underlying.ring;
  const WittRing& lf = lower.fixed.ring;
  auto ru = [&](Elem x) { return lu.encode(uu.restriction(uu.decode(x))); };
  auto rf = [&](Elem x) { return lf.encode(uf.restriction(uf.decode(x))); };
  bool res_ok = true, tr_ok = true, w_ok = true;
  for (Elem a = 0; a < uf.size(); ++a) res_ok = res_ok && ru(upper.res[a]) == lower.res[rf(a)];
  for (Elem x = 0; x < uu.size(); ++x) {
    tr_ok = tr_ok && rf(upper.tr[x]) == lower.tr[ru(x)];
    w_ok = w_ok && ru(upper.w[x]) == lower.w[ru(x)];
  }
  if (!res_ok) out.push_back("R∘res != res∘R");
  if (!tr_ok) out.push_back("R∘tr != tr∘R");
  if (!w_ok) out.push_back("R∘W(w) != W(w)∘R");
  return out;
}

MLReport ml_check(const InvRing& a, unsigned depth, const Budget& budget) {
  if (depth < 1) throw ParseError("depth must be at least 1");
  MuReport mu = mu_is_iso(a, budget);
  if (!mu.iso) throw Refusal("mu-iso", "multiplication on the norm tensor of " + a.spec() + " is not an isomorphism");
  std::vector<GreenFunctorData> levels;  // levels[n-1] describes W_n
  std::vector<QuotientResult> q;
  for (unsigned n = 1; n <= depth + 1; ++n) {
    budget.check();
    levels.push_back(build_green(a, n - 1, budget));
    q.push_back(cokernel(levels.back().tr_hom));
  }
  MLReport out;
  out.all = true;
  for (unsigned n = 1; n <= depth; ++n) {
    GroupHom r = witt_restriction_hom(levels[n].fixed, levels[n - 1].fixed);
    GroupHom induced = descend_through_surjection(q[n].projection, q[n - 1].projection * r);
    bool iso = is_isomorphism(induced);
    out.iso.push_back(iso);
    out.quotients.push_back(q[n - 1].group);
    out.all = out.all && iso;
  }
  return out;
}

}  // namespace tcrcalc
