#include "tcrcalc/budget.hpp"
#include "tcrcalc/errors.hpp"
#include "tcrcalc/ring.hpp"

#include <set>

namespace tcrcalc {

FrobeniusMap frobenius(const FinRing& a, unsigned p) {
  FrobeniusMap f;
  f.p = p;
  f.map.resize(a.size());
  std::vector<bool> hit(a.size(), false);
  f.injective = true;
  for (Elem x = 0; x < a.size(); ++x) {
    f.map[x] = a.pow(x, p);
    if (hit[f.map[x]]) f.injective = false;
    hit[f.map[x]] = true;
  }
  f.bijective = f.injective;
  AdditiveChart chart = a.additive_chart();
  f.additive = chart.hom(chart, [&](Elem x) { return f.map[x]; }).has_value();
  return f;
}

std::optional<Elem> FixedSubring::index_of(Elem a) const {
  return ring.as<SubringModel>()->index_of(a);
}

FixedSubring fixed_subring(const InvRing& a) {
  const FinRing& r = a.ring();
  std::vector<Elem> fixed;
  for (Elem x = 0; x < r.size(); ++x)
    if (a.w(x) == x) fixed.push_back(x);
  FixedSubring out;
  out.ring = FinRing(std::make_shared<SubringModel>(r, fixed), "fixed(" + a.spec() + ")");
  out.inclusion = fixed;
  const auto* sub = out.ring.as<SubringModel>();
  out.transfer.resize(r.size());
  out.norm.resize(r.size());
  for (Elem x = 0; x < r.size(); ++x) {
    auto t = sub->index_of(r.add(x, a.w(x)));
    auto n = sub->index_of(r.mul(x, a.w(x)));
    if (!t || !n) throw AlgebraError("transfer or norm leaves the fixed subring");
    out.transfer[x] = *t;
    out.norm[x] = *n;
  }
  return out;
}

namespace {

// Coordinates of x ⊗ y in the raw basis e_i ⊗ e_j (index i * r + j).
IntVector raw_tensor(const IntVector& x, const IntVector& y) {
  const std::size_t r = x.size();
  IntVector t(r * r, Integer(0));
  for (std::size_t i = 0; i < r; ++i)
    if (sgn(x[i]) != 0)
      for (std::size_t j = 0; j < r; ++j) t[i * r + j] = x[i] * y[j];
  return t;
}

}  // namespace

std::string NormTensor::render(const IntVector& coords) const {
  IntVector normal = tensor_from_quotient.apply(coords);
  IntVector raw = tensor_presentation.from_normal.apply(normal);
  const std::size_t r = fixed_chart.group().rank();
  const auto& d = fixed_chart.group().invariants();
  std::string out;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Integer g = gcd(d[i], d[j]);
      Integer c;
      mpz_fdiv_r(c.get_mpz_t(), raw[i * r + j].get_mpz_t(), g.get_mpz_t());
      if (sgn(c) == 0) continue;
      if (!out.empty()) out += "+";
      if (c != 1) out += c.get_str() + "*";
      out += "(" + fixed.ring.name(fixed_chart.basis_element(i)) + "⊗" +
             fixed.ring.name(fixed_chart.basis_element(j)) + ")";
    }
  return out.empty() ? "0" : out;
}

NormTensor norm_tensor(const InvRing& a, const Budget& budget) {
  NormTensor t;
  t.fixed = fixed_subring(a);
  const FinRing& f = t.fixed.ring;
  budget.require_enum(f.size() * f.size(), "norm tensor");
  t.fixed_chart = f.additive_chart();
  const AdditiveChart& chart = t.fixed_chart;
  const FinAbGroup& g = chart.group();
  const std::size_t r = g.rank();

  std::vector<Elem> basis(r);
  for (std::size_t i = 0; i < r; ++i) basis[i] = chart.basis_element(i);
  std::vector<std::vector<IntVector>> prod(r, std::vector<IntVector>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) prod[i][k] = chart.coords(f.mul(basis[i], basis[k]));

  TensorProduct tp = tensor(g, g);
  t.tensor_presentation = tp.presentation;
  const NormalizedGroup& ng = tp.presentation;
  const std::size_t tr = tp.group.rank();

  auto raw_mul = [&](const IntVector& x, const IntVector& y) {
    IntVector z(r * r, Integer(0));
    for (std::size_t ij = 0; ij < r * r; ++ij) {
      if (sgn(x[ij]) == 0) continue;
      for (std::size_t kl = 0; kl < r * r; ++kl) {
        if (sgn(y[kl]) == 0) continue;
        Integer c = x[ij] * y[kl];
        IntVector term = raw_tensor(prod[ij / r][kl / r], prod[ij % r][kl % r]);
        for (std::size_t s = 0; s < r * r; ++s) z[s] += c * term[s];
      }
    }
    return z;
  };
  auto to_tensor = [&](const IntVector& raw) { return tp.group.reduce(ng.to_normal.apply(raw)); };

  // Subgroup of F spanned by norms; the ideal generators 1⊗n - n⊗1 are additive in n.
  std::set<Elem> norms(t.fixed.norm.begin(), t.fixed.norm.end());
  std::vector<IntVector> norm_cols;
  for (Elem n : norms) norm_cols.push_back(chart.coords(n));
  IntMatrix span = IntMatrix::from_columns(r, norm_cols).hstack(IntMatrix::diagonal(g.invariants()));
  IntMatrix span_basis = lattice_basis(span);

  IntVector one = chart.coords(f.one());
  IntMatrix relations = IntMatrix::diagonal(tp.group.invariants());
  std::vector<IntVector> ideal_cols;
  for (std::size_t s = 0; s < span_basis.cols(); ++s) {
    IntVector n = span_basis.column(s);
    IntVector x = raw_tensor(one, n), y = raw_tensor(n, one);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] -= y[k];
    for (std::size_t ij = 0; ij < r * r; ++ij) {
      IntVector unit(r * r, Integer(0));
      unit[ij] = 1;
      ideal_cols.push_back(to_tensor(raw_mul(unit, x)));
    }
  }
  if (!ideal_cols.empty()) relations = relations.hstack(IntMatrix::from_columns(tr, ideal_cols));
  NormalizedGroup q = normalize_presentation(tr, relations);
  t.quotient_from_tensor = q.to_normal;
  t.tensor_from_quotient = q.from_normal;
  const FinAbGroup& qg = q.group;
  const std::size_t qr = qg.rank();

  auto lift_raw = [&](const IntVector& qc) { return ng.from_normal.apply(q.from_normal.apply(qc)); };
  auto to_quotient = [&](const IntVector& raw) { return qg.reduce(q.to_normal.apply(to_tensor(raw))); };

  std::vector<std::vector<IntVector>> qprod(qr, std::vector<IntVector>(qr));
  std::vector<IntVector> qbasis(qr, IntVector(qr, Integer(0)));
  for (std::size_t i = 0; i < qr; ++i) qbasis[i][i] = 1;
  for (std::size_t i = 0; i < qr; ++i)
    for (std::size_t j = 0; j < qr; ++j) qprod[i][j] = to_quotient(raw_mul(lift_raw(qbasis[i]), lift_raw(qbasis[j])));
  IntVector qone = to_quotient(raw_tensor(one, one));

  // μ(e_i ⊗ e_j) = b_i b_j.
  std::vector<IntVector> mu_cols;
  for (std::size_t i = 0; i < qr; ++i) {
    IntVector raw = lift_raw(qbasis[i]);
    IntVector img(r, Integer(0));
    for (std::size_t ij = 0; ij < r * r; ++ij)
      if (sgn(raw[ij]) != 0)
        for (std::size_t k = 0; k < r; ++k) img[k] += raw[ij] * prod[ij / r][ij % r][k];
    mu_cols.push_back(img);
  }
  t.mu = GroupHom(qg, g, IntMatrix::from_columns(r, mu_cols));
  std::vector<IntVector> sec_cols;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, Integer(0));
    e[i] = 1;
    sec_cols.push_back(to_quotient(raw_tensor(e, one)));
  }
  t.section = GroupHom(g, qg, IntMatrix::from_columns(qr, sec_cols));

  std::vector<std::string> names;
  for (std::size_t i = 0; i < qr; ++i) names.push_back("[" + t.render(qbasis[i]) + "]");
  t.ring = FinRing(std::make_shared<StructureConstantsModel>(qg, qone, qprod, names), "normtensor(" + a.spec() + ")");

  SubgroupResult k = kernel(t.mu);
  for (std::size_t i = 0; i < k.group.rank(); ++i) t.kernel_witnesses.push_back(t.render(k.inclusion.matrix().column(i)));
  return t;
}

MuReport mu_report(const NormTensor& t) {
  MuReport m;
  SubgroupResult k = kernel(t.mu);
  m.kernel = k.group;
  m.iso = k.group.is_trivial() && is_surjective(t.mu);
  if (!m.iso) {
    if (!t.kernel_witnesses.empty())
      m.witness = t.kernel_witnesses.front();
    else
      m.witness = "cokernel " + cokernel(t.mu).group.to_string();
  }
  if (k.group.is_finite()) {
    Integer order = k.group.order();
    while (mpz_even_p(order.get_mpz_t())) order /= 2;
    m.kernel_two_primary = order == 1;
  } else {
    m.kernel_two_primary = false;
  }
  return m;
}

MuReport mu_is_iso(const InvRing& a, const Budget& budget) { return mu_report(norm_tensor(a, budget)); }

}  // namespace tcrcalc
