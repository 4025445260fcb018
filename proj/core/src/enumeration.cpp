#include "tcrcalc/enumeration.hpp"
#include "tcrcalc/errors.hpp"

namespace tcrcalc {

AdditiveChart AdditiveChart::build(std::size_t size, Elem zero, const std::function<Elem(Elem, Elem)>& add) {
  if (size == 0 || zero >= size) throw AlgebraError("chart: bad element set");
  // Greedy generators g_1..g_k; each element stored with its coefficients in the g's.
  std::vector<std::vector<std::int64_t>> coef(size);
  std::vector<bool> seen(size, false);
  std::vector<Elem> span{zero};
  seen[zero] = true;
  std::vector<std::vector<std::int64_t>> relations;  // column per generator, length k
  std::size_t k = 0;
  for (Elem x = 0; x < size; ++x) {
    if (seen[x]) continue;
    std::int64_t m = 1;
    Elem y = x;
    while (!seen[y]) {
      y = add(y, x);
      ++m;
      if (m > static_cast<std::int64_t>(size)) throw AlgebraError("chart: addition is not a group law");
    }
    // m x = y with y already spanned: relation m e_k - coef(y).
    std::vector<std::int64_t> rel(k + 1, 0);
    for (std::size_t j = 0; j < k; ++j) rel[j] = -coef[y][j];
    rel[k] = m;
    for (Elem s : span) coef[s].push_back(0);
    for (auto& r : relations) r.push_back(0);
    relations.push_back(rel);
    ++k;
    std::vector<Elem> old = span;
    Elem kx = zero;
    for (std::int64_t t = 1; t < m; ++t) {
      kx = add(kx, x);
      for (Elem s : old) {
        Elem e = add(s, kx);
        if (seen[e]) throw AlgebraError("chart: addition is not a group law");
        seen[e] = true;
        coef[e] = coef[s];
        coef[e][k - 1] = t;
        span.push_back(e);
      }
    }
  }
  if (span.size() != size) throw AlgebraError("chart: addition is not a group law");

  IntMatrix rel(k, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) rel(i, j) = static_cast<long>(relations[j][i]);
  NormalizedGroup ng = normalize_presentation(k, rel);

  AdditiveChart chart;
  chart.group_ = ng.group;
  const std::size_t r = ng.group.rank();
  chart.radix_.assign(r, 1);
  std::int64_t stride = 1;
  for (std::size_t i = 0; i < r; ++i) {
    chart.radix_[i] = stride;
    stride *= ng.group.invariants()[i].get_si();
  }
  if (static_cast<std::size_t>(stride) != size) throw AlgebraError("chart: order mismatch");
  chart.coords_.assign(size * r, 0);
  chart.elem_of_index_.assign(size, 0);
  std::vector<bool> hit(size, false);
  for (Elem e = 0; e < size; ++e) {
    for (std::size_t i = 0; i < r; ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += ng.to_normal(i, j) * static_cast<long>(coef[e][j]);
      Integer red;
      mpz_fdiv_r(red.get_mpz_t(), acc.get_mpz_t(), ng.group.invariants()[i].get_mpz_t());
      chart.coords_[e * r + i] = red.get_si();
    }
    std::size_t idx = chart.index_of(&chart.coords_[e * r]);
    if (hit[idx]) throw AlgebraError("chart: coordinates are not injective");
    hit[idx] = true;
    chart.elem_of_index_[idx] = e;
  }
  return chart;
}

std::size_t AdditiveChart::index_of(const std::int64_t* c) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < radix_.size(); ++i) idx += c[i] * radix_[i];
  return static_cast<std::size_t>(idx);
}

IntVector AdditiveChart::coords(Elem e) const {
  const std::size_t r = group_.rank();
  IntVector v(r);
  for (std::size_t i = 0; i < r; ++i) v[i] = static_cast<long>(coords_[e * r + i]);
  return v;
}

Elem AdditiveChart::element(const IntVector& c) const {
  IntVector red = group_.reduce(c);
  std::vector<std::int64_t> raw(red.size());
  for (std::size_t i = 0; i < red.size(); ++i) raw[i] = red[i].get_si();
  return elem_of_index_[index_of(raw.data())];
}

Elem AdditiveChart::basis_element(std::size_t i) const {
  IntVector e(group_.rank(), Integer(0));
  e[i] = 1;
  return element(e);
}

std::optional<GroupHom> AdditiveChart::hom(const AdditiveChart& target, const std::function<Elem(Elem)>& f) const {
  const std::size_t r = group_.rank(), s = target.group_.rank();
  IntMatrix m(s, r);
  for (std::size_t j = 0; j < r; ++j) {
    IntVector c = target.coords(f(basis_element(j)));
    for (std::size_t i = 0; i < s; ++i) m(i, j) = c[i];
  }
  std::optional<GroupHom> h;
  try {
    h.emplace(group_, target.group_, m);
  } catch (const AlgebraError&) {
    return std::nullopt;
  }
  std::vector<std::int64_t> mm(s * r);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < r; ++j) mm[i * r + j] = h->matrix()(i, j).get_si();
  std::vector<std::int64_t> img(s);
  for (Elem e = 0; e < size(); ++e) {
    for (std::size_t i = 0; i < s; ++i) {
      std::int64_t acc = 0;
      for (std::size_t j = 0; j < r; ++j) acc += mm[i * r + j] * coords_[e * r + j];
      img[i] = acc % target.group_.invariants()[i].get_si();
    }
    if (target.elem_of_index_[target.index_of(img.data())] != f(e)) return std::nullopt;
  }
  return h;
}

GroupHom AdditiveChart::hom_or_throw(const AdditiveChart& target, const std::function<Elem(Elem)>& f) const {
  auto h = hom(target, f);
  if (!h) throw AlgebraError("map is not additive");
  return *h;
}

}  // namespace tcrcalc
