#include "tcrcalc/barcalc.hpp"
#include "tcrcalc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

namespace tcrcalc {

// ------------------------------------------------------------------ groups

bool FiniteGroup::is_abelian() const {
  for (Elem a = 0; a < size(); ++a)
    for (Elem b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup FiniteGroup::cyclic(unsigned n) {
  if (n == 0) throw ParseError("cyclic group of order 0");
  FiniteGroup g;
  g.name = "C" + std::to_string(n);
  g.table.resize(std::size_t{n} * n);
  g.inverse.resize(n);
  for (Elem a = 0; a < n; ++a) {
    g.names.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a)));
    g.inverse[a] = (n - a) % n;
    for (Elem b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
  }
  return g;
}

FiniteGroup FiniteGroup::dihedral(unsigned n) {
  if (n < 1) throw ParseError("dihedral group needs n >= 1");
  FiniteGroup g;
  g.name = "D" + std::to_string(n);
  const std::size_t size = 2 * std::size_t{n};
  g.table.resize(size * size);
  g.inverse.resize(size);
  // r^i s^a at index i + n a.
  auto idx = [n](unsigned i, unsigned a) { return static_cast<Elem>(i % n + n * a); };
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned i = 0; i < n; ++i) {
      std::string r = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
      std::string s = a ? "s" : "";
      g.names.push_back(r.empty() && s.empty() ? "e" : r + s);
    }
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned i = 0; i < n; ++i)
      for (unsigned b = 0; b < 2; ++b)
        for (unsigned j = 0; j < n; ++j) {
          // (r^i s^a)(r^j s^b) = r^{i ± j} s^{a+b}
          unsigned k = a ? (i + n - j) % n : (i + j) % n;
          g.table[idx(i, a) * size + idx(j, b)] = idx(k, a ^ b);
        }
  for (Elem x = 0; x < size; ++x)
    for (Elem y = 0; y < size; ++y)
      if (g.table[x * size + y] == 0) g.inverse[x] = y;
  return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.name = a.name + "x" + b.name;
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  g.table.resize(n * n);
  g.inverse.resize(n);
  for (Elem y = 0; y < nb; ++y)
    for (Elem x = 0; x < na; ++x) g.names.push_back("(" + a.names[x] + "," + b.names[y] + ")");
  for (Elem u = 0; u < n; ++u) {
    g.inverse[u] = static_cast<Elem>(a.inverse[u % na] + na * b.inverse[u / na]);
    for (Elem v = 0; v < n; ++v)
      g.table[u * n + v] = static_cast<Elem>(a.mul(u % na, v % na) + na * b.mul(u / na, v / na));
  }
  return g;
}

void MonoidWithAntiInv::validate() const {
  const std::size_t n = group.size();
  if (w.size() != n) throw AlgebraError("anti-involution has the wrong size");
  for (Elem a = 0; a < n; ++a) {
    if (w[w[a]] != a) throw AlgebraError("anti-involution does not square to the identity");
    for (Elem b = 0; b < n; ++b)
      if (w[group.mul(a, b)] != group.mul(w[b], w[a]))
        throw AlgebraError("w(gh) != w(h)w(g) at g=" + group.names[a] + ", h=" + group.names[b]);
  }
}

Elem MonoidWithAntiInv::right(Elem x, Elem g) const { return group.mul(group.mul(w[g], x), g); }
Elem MonoidWithAntiInv::left(Elem g, Elem y) const { return group.mul(group.mul(g, y), w[g]); }

// ------------------------------------------------------------------ parsing

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

unsigned parse_order(const std::string& digits, const std::string& whole) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("bad group factor '" + whole + "'");
  unsigned long v = std::stoul(digits);
  if (v == 0 || v > 4096) throw ParseError("group order out of range in '" + whole + "'");
  return static_cast<unsigned>(v);
}

}  // namespace

BarInput parse_bar_group(std::string_view text) {
  std::string s(text);
  std::string involution;
  if (auto pos = s.find(" with "); pos != std::string::npos) {
    involution = strip(s.substr(pos + 6));
    s = s.substr(0, pos);
    if (involution != "inv" && involution != "trivial") throw ParseError("unknown involution '" + involution + "'");
  }
  std::string body = strip(s);
  if (body.empty()) throw ParseError("empty group spec");

  std::vector<std::string> factors;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i)
    if (i == body.size() || body[i] == 'x') {
      factors.push_back(body.substr(start, i - start));
      start = i + 1;
    }

  bool infinite = false, all_abelian = true;
  std::optional<FiniteGroup> g;
  IntVector abelian_factors;
  for (const std::string& f : factors) {
    if (f.empty()) throw ParseError("empty factor in '" + body + "'");
    if (f == "Z") {
      infinite = true;
      abelian_factors.push_back(0);
      continue;
    }
    FiniteGroup h;
    if (f[0] == 'C') {
      h = FiniteGroup::cyclic(parse_order(f.substr(1), f));
      abelian_factors.push_back(Integer(static_cast<unsigned long>(h.size())));
    } else if (f[0] == 'D') {
      h = FiniteGroup::dihedral(parse_order(f.substr(1), f));
      if (h.is_abelian())
        for (unsigned i = 0; i < (h.size() == 4 ? 2u : 1u); ++i) abelian_factors.push_back(2);
      else
        all_abelian = false;
    } else if (f == "S3") {
      h = FiniteGroup::dihedral(3);
      h.name = "S3";
      all_abelian = false;
    } else {
      throw ParseError("unknown group factor '" + f + "'");
    }
    g = g ? FiniteGroup::product(*g, h) : h;
  }
  if (involution.empty()) involution = all_abelian ? "trivial" : "inv";

  BarInput out;
  out.spec = body + " with " + involution;
  if (infinite) {
    if (!all_abelian || involution != "trivial")
      throw Refusal("unsupported-infinite", "infinite groups are handled only when abelian with trivial involution");
    out.abelian = FinAbGroup::from_factors(abelian_factors);
    return out;
  }
  MonoidWithAntiInv m;
  m.group = *g;
  m.involution = involution;
  m.w.resize(m.group.size());
  for (Elem a = 0; a < m.group.size(); ++a) m.w[a] = involution == "inv" ? m.group.inverse[a] : a;
  if (involution == "trivial" && !m.group.is_abelian())
    throw ParseError("the trivial involution is an anti-involution only on abelian groups");
  m.validate();
  if (m.group.is_abelian() && involution == "trivial") out.abelian = FinAbGroup::from_factors(abelian_factors);
  out.finite = std::move(m);
  return out;
}

// ------------------------------------------------------------------ components

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::size_t ComponentDecomposition::index_of(Elem x, Elem y) const {
  auto ix = std::find(fixed.begin(), fixed.end(), x);
  auto iy = std::find(fixed.begin(), fixed.end(), y);
  if (ix == fixed.end() || iy == fixed.end()) throw AlgebraError("element not fixed by the involution");
  return component_of[static_cast<std::size_t>(ix - fixed.begin()) * fixed.size() +
                      static_cast<std::size_t>(iy - fixed.begin())];
}

ComponentDecomposition components(const MonoidWithAntiInv& g, const Budget& budget) {
  ComponentDecomposition d;
  d.g = g;
  const std::size_t n = g.group.size();
  std::vector<std::size_t> pos(n, n);
  for (Elem a = 0; a < n; ++a)
    if (g.w[a] == a) {
      pos[a] = d.fixed.size();
      d.fixed.push_back(a);
    }
  const std::size_t f = d.fixed.size();
  budget.require_enum(f * f * n, "bar construction orbits");
  UnionFind uf(f * f);
  for (std::size_t i = 0; i < f; ++i) {
    budget.check();
    for (std::size_t j = 0; j < f; ++j)
      for (Elem h = 0; h < n; ++h) {
        // (x·h, y) ~ (x, h·y)
        std::size_t a = pos[g.right(d.fixed[i], h)], b = pos[g.left(h, d.fixed[j])];
        uf.unite(a * f + j, i * f + b);
      }
  }
  std::map<std::size_t, std::size_t> root_to_comp;
  d.component_of.resize(f * f);
  for (std::size_t p = 0; p < f * f; ++p) {
    std::size_t r = uf.find(p);
    auto [it, inserted] = root_to_comp.try_emplace(r, d.components.size());
    if (inserted) {
      Component c;
      c.x = d.fixed[p / f];
      c.y = d.fixed[p % f];
      for (Elem h = 0; h < n; ++h)
        if (g.right(c.x, h) == c.x && g.left(h, c.y) == c.y) c.aut.push_back(h);
      bool abelian = true;
      for (Elem a : c.aut)
        for (Elem b : c.aut) abelian = abelian && g.group.mul(a, b) == g.group.mul(b, a);
      if (abelian) {
        std::map<Elem, Elem> local;
        for (Elem k = 0; k < c.aut.size(); ++k) local[c.aut[k]] = k;
        Elem zero = local.at(g.group.identity);
        AdditiveChart chart = AdditiveChart::build(c.aut.size(), zero, [&](Elem a, Elem b) {
          return local.at(g.group.mul(c.aut[a], c.aut[b]));
        });
        c.aut_group = chart.group();
      }
      d.components.push_back(std::move(c));
    }
    d.component_of[p] = it->second;
    d.components[it->second].orbit_size++;
  }
  return d;
}

namespace {

bool contains(const std::vector<Elem>& v, Elem e) { return std::find(v.begin(), v.end(), e) != v.end(); }

std::vector<Elem> stabilizer(const MonoidWithAntiInv& g, Elem x, Elem y) {
  std::vector<Elem> out;
  for (Elem h = 0; h < g.group.size(); ++h)
    if (g.right(x, h) == x && g.left(h, y) == y) out.push_back(h);
  return out;
}

template <class Fn>
ComponentMap map_components(const ComponentDecomposition& d, Fn object_map) {
  ComponentMap m;
  const std::size_t f = d.fixed.size();
  m.image.assign(d.components.size(), d.components.size());
  for (std::size_t p = 0; p < f * f; ++p) {
    auto [x2, y2] = object_map(d.fixed[p / f], d.fixed[p % f]);
    std::size_t target = d.index_of(x2, y2);
    std::size_t& slot = m.image[d.component_of[p]];
    if (slot == d.components.size())
      slot = target;
    else if (slot != target)
      m.well_defined = false;
  }
  return m;
}

}  // namespace

ComponentMap psi_on_components(const ComponentDecomposition& d) {
  const MonoidWithAntiInv& g = d.g;
  ComponentMap m = map_components(d, [&](Elem x, Elem y) { return std::pair{x, g.left(y, x)}; });
  for (const Component& c : d.components) {
    std::vector<Elem> target = stabilizer(g, c.x, g.left(c.y, c.x));
    for (Elem h : c.aut) m.aut_compatible = m.aut_compatible && contains(target, h);
  }
  for (std::size_t i = 0; i < m.image.size(); ++i)
    if (m.image[i] == i) m.fixed_points.push_back(i);
  return m;
}

ComponentMap tau_on_components(const ComponentDecomposition& d) {
  const MonoidWithAntiInv& g = d.g;
  ComponentMap m = map_components(d, [](Elem x, Elem y) { return std::pair{y, x}; });
  for (const Component& c : d.components) {
    std::vector<Elem> target = stabilizer(g, c.y, c.x);
    std::set<Elem> hit;
    for (Elem h : c.aut) {
      Elem t = g.w[g.group.inverse[h]];
      m.aut_compatible = m.aut_compatible && contains(target, t);
      hit.insert(t);
    }
    m.aut_compatible = m.aut_compatible && hit.size() == target.size();
  }
  for (std::size_t i = 0; i < m.image.size(); ++i) {
    if (m.image[i] == i)
      m.fixed_points.push_back(i);
    else if (m.image[i] > i)
      m.free_pairs.emplace_back(i, m.image[i]);
    if (m.image[m.image[i]] != i) m.well_defined = false;
  }
  return m;
}

// ------------------------------------------------------------------ abelian closed form

namespace {

IntVector mod_two(const FinAbGroup& g, const IntVector& x) {
  IntVector z;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    const Integer& d = g.invariants()[i];
    if (sgn(d) == 0 || mpz_even_p(d.get_mpz_t())) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), x[i].get_mpz_t(), 2);
      z.push_back(r);
    }
  }
  return z;
}

IntVector add_mod_two(const IntVector& a, const IntVector& b) {
  IntVector z(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    z[i] = a[i] + b[i];
    mpz_fdiv_r_ui(z[i].get_mpz_t(), z[i].get_mpz_t(), 2);
  }
  return z;
}

}  // namespace

AbelianLabel abelian_label(const FinAbGroup& g, const IntVector& x, const IntVector& y) {
  IntVector s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
  return {g.reduce(s), mod_two(g, y)};
}

AbelianLabel abelian_psi(const FinAbGroup& g, const AbelianLabel& l) {
  IntVector twice(l.x.size());
  for (std::size_t i = 0; i < l.x.size(); ++i) twice[i] = 2 * l.x[i];
  return {g.reduce(twice), add_mod_two(mod_two(g, l.x), l.z)};
}

AbelianLabel abelian_tau(const FinAbGroup& g, const AbelianLabel& l) { return {l.x, add_mod_two(mod_two(g, l.x), l.z)}; }

std::string to_string(const AbelianLabel& l) {
  auto vec = [](const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + ")";
  };
  return "(" + vec(l.x) + "," + vec(l.z) + ")";
}

ClosedFormCheck check_abelian_closed_form(const ComponentDecomposition& d) {
  ClosedFormCheck out;
  const MonoidWithAntiInv& m = d.g;
  if (!m.group.is_abelian() || m.involution != "trivial")
    throw AlgebraError("closed form applies to abelian groups with trivial involution");
  const FiniteGroup& grp = m.group;
  AdditiveChart chart = AdditiveChart::build(grp.size(), grp.identity, [&](Elem a, Elem b) { return grp.mul(a, b); });
  const FinAbGroup& g = chart.group();
  auto fail = [&](const std::string& s) {
    out.ok = false;
    out.failures.push_back(s);
  };

  std::vector<AbelianLabel> comp_label(d.components.size());
  std::vector<bool> seen(d.components.size(), false);
  std::set<AbelianLabel> labels;
  const std::size_t f = d.fixed.size();
  for (std::size_t p = 0; p < f * f; ++p) {
    AbelianLabel l = abelian_label(g, chart.coords(d.fixed[p / f]), chart.coords(d.fixed[p % f]));
    std::size_t c = d.component_of[p];
    if (!seen[c]) {
      seen[c] = true;
      comp_label[c] = l;
      if (!labels.insert(l).second) fail("two orbits share the label " + to_string(l));
    } else if (!(comp_label[c] == l)) {
      fail("label not constant on the orbit of " + to_string(comp_label[c]));
    }
  }
  Integer expected = g.order() * (Integer(1) << static_cast<unsigned>(mod_two(g, IntVector(g.rank())).size()));
  if (Integer(static_cast<unsigned long>(labels.size())) != expected) fail("orbit count differs from |G x G/2|");

  ComponentMap psi = psi_on_components(d), tau = tau_on_components(d);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    if (!(comp_label[psi.image[c]] == abelian_psi(g, comp_label[c]))) fail("psi differs at " + to_string(comp_label[c]));
    if (!(comp_label[tau.image[c]] == abelian_tau(g, comp_label[c]))) fail("tau differs at " + to_string(comp_label[c]));
  }
  if (!psi.well_defined || !tau.well_defined) fail("psi or tau not constant on orbits");
  return out;
}

ClosedFormCheck check_free_abelian_window(std::size_t rank, int bound) {
  ClosedFormCheck out;
  if (rank == 0 || rank > 2 || bound < 1) throw ParseError("window check supports rank 1 or 2");
  FinAbGroup g(IntVector(rank, Integer(0)));
  const int side = 2 * bound + 1;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < rank; ++i) cells *= static_cast<std::size_t>(side);
  auto vec_of = [&](std::size_t idx) {
    IntVector v(rank);
    for (std::size_t i = 0; i < rank; ++i) {
      v[i] = static_cast<long>(idx % side) - bound;
      idx /= side;
    }
    return v;
  };
  auto idx_of = [&](const IntVector& v) -> std::optional<std::size_t> {
    std::size_t idx = 0, mul = 1;
    for (std::size_t i = 0; i < rank; ++i) {
      if (v[i] < -bound || v[i] > bound) return std::nullopt;
      idx += static_cast<std::size_t>(v[i].get_si() + bound) * mul;
      mul *= static_cast<std::size_t>(side);
    }
    return idx;
  };
  UnionFind uf(cells * cells);
  for (std::size_t x = 0; x < cells; ++x)
    for (std::size_t y = 0; y < cells; ++y)
      for (std::size_t h = 0; h < cells; ++h) {
        IntVector xv = vec_of(x), yv = vec_of(y), hv = vec_of(h);
        IntVector xg(rank), gy(rank);
        for (std::size_t i = 0; i < rank; ++i) {
          xg[i] = xv[i] + 2 * hv[i];
          gy[i] = yv[i] + 2 * hv[i];
        }
        auto a = idx_of(xg), b = idx_of(gy);
        if (a && b) uf.unite(*a * cells + y, x * cells + *b);
      }
  std::map<std::size_t, AbelianLabel> by_root;
  std::map<AbelianLabel, std::size_t> root_of_label;
  for (std::size_t p = 0; p < cells * cells; ++p) {
    AbelianLabel l = abelian_label(g, vec_of(p / cells), vec_of(p % cells));
    std::size_t r = uf.find(p);
    auto [it, fresh] = by_root.try_emplace(r, l);
    if (!fresh && !(it->second == l)) {
      out.ok = false;
      out.failures.push_back("label not constant on an orbit: " + to_string(l));
    }
    auto [jt, fresh2] = root_of_label.try_emplace(l, r);
    if (!fresh2 && jt->second != r) {
      out.ok = false;
      out.failures.push_back("label splits into several orbits: " + to_string(l));
    }
  }
  return out;
}

AbelianCensus abelian_report(const FinAbGroup& g) {
  AbelianCensus c;
  c.group = g;
  unsigned halves = 0;
  for (const Integer& d : g.invariants()) {
    if (sgn(d) == 0) {
      ++halves;
      continue;
    }
    Integer odd = d;
    while (mpz_even_p(odd.get_mpz_t())) odd /= 2;
    if (odd != 1)
      throw Refusal("two-divisibility", "the factor Z/" + d.get_str() + " has elements infinitely divisible by 2");
    c.two_torsion = true;
    ++halves;
  }
  c.g_mod_2 = Integer(1) << halves;
  if (g.is_finite()) {
    Integer order = g.order();
    Integer two_g = order / c.g_mod_2;  // |2G| = |G| / |G/2| for finite G
    c.tau_fixed = two_g * c.g_mod_2;
    c.free_orbits = (order - two_g) * c.g_mod_2 / 2;
    c.type_two = c.free_orbits->get_str() + " free C2-orbits in (G\\2G) x G/2";
  } else {
    c.type_two = "countably many free C2-orbits in (G\\2G) x G/2";
  }
  c.type_one = c.g_mod_2.get_str() + " components indexed by G/2";
  return c;
}

}  // namespace tcrcalc
