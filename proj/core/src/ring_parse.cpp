#include "tcrcalc/errors.hpp"
#include "tcrcalc/ring_spec.hpp"
#include "tcrcalc/witt.hpp"

#include <cctype>
#include <functional>

namespace tcrcalc {

namespace {

// ------------------------------------------------------------ F_p[x] helpers

using Poly = std::vector<unsigned>;  // low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  unsigned inv_lead = 1;
  for (unsigned c = 1; c < p; ++c)
    if (c * m.back() % p == 1) inv_lead = c;
  while (a.size() >= m.size()) {
    unsigned c = a.back() * inv_lead % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, unsigned p) {
  const std::size_t d = f.size() - 1;
  if (d <= 1) return d == 1;
  for (std::size_t k = 1; k <= d / 2; ++k) {
    // all monic polynomials of degree k
    std::size_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::size_t idx = 0; idx < count; ++idx) {
      Poly g(k + 1, 0);
      std::size_t t = idx;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      g[k] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ------------------------------------------------------------------ parser

class Parser {
 public:
  explicit Parser(std::string text) : s_(std::move(text)) {}

  RingExpr parse() {
    RingExpr e = product();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("ring spec '" + s_ + "' at position " + std::to_string(pos_) + ": " + what);
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::uint64_t integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 12) fail("integer too large");
    return std::stoull(s_.substr(start, pos_ - start));
  }

  RingExpr product() {
    RingExpr left = postfix();
    while (accept('x')) {
      RingExpr right = postfix();
      RingExpr p;
      p.kind = RingExpr::Kind::Product;
      p.children = {std::move(left), std::move(right)};
      left = std::move(p);
    }
    return left;
  }

  RingExpr postfix() {
    RingExpr e = primary();
    while (accept('[')) {
      expect('C');
      std::uint64_t m = integer();
      expect(']');
      if (m < 1 || m > 64) fail("cyclic group order out of range");
      RingExpr g;
      g.kind = RingExpr::Kind::GroupRing;
      g.n = static_cast<unsigned>(m);
      g.children = {std::move(e)};
      e = std::move(g);
    }
    return e;
  }

  RingExpr primary() {
    RingExpr e;
    if (accept('(')) {
      e = product();
      expect(')');
      return e;
    }
    if (accept('Z')) {
      if (accept('/')) {
        e.kind = RingExpr::Kind::ZMod;
        e.modulus = integer();
        if (e.modulus < 2) fail("Z/n needs n >= 2");
        if (e.modulus > (1u << 30)) fail("modulus too large");
        return e;
      }
      e.kind = RingExpr::Kind::ProIntegers;
      e.alias = "Z";
      if (accept('_')) {
        if (!accept('2')) fail("only the 2-adic tower Z_2 is supported");
        e.alias = "Z_2";
      }
      return e;
    }
    if (s_.compare(pos_, 3, "GF(") == 0) {
      pos_ += 3;
      e.kind = RingExpr::Kind::GF;
      std::uint64_t p = integer();
      if (!is_prime(p) || p > 251) fail("GF characteristic must be a prime below 256");
      e.prime = static_cast<unsigned>(p);
      expect(',');
      std::size_t close = s_.find(')', pos_);
      if (close == std::string::npos) fail("unterminated GF(");
      e.poly = parse_poly(s_.substr(pos_, close - pos_), e.prime);
      pos_ = close + 1;
      if (e.poly.size() < 2) fail("GF polynomial must have positive degree");
      if (e.poly.back() != 1) fail("GF polynomial must be monic");
      if (!is_irreducible(e.poly, e.prime)) throw ParseError("GF polynomial is reducible over F_" + std::to_string(e.prime));
      return e;
    }
    if (accept('W')) {
      if (peek('(')) {
        e.kind = RingExpr::Kind::ProWitt;
      } else {
        e.kind = RingExpr::Kind::Witt;
        std::uint64_t n = integer();
        if (n < 1 || n > 12) fail("Witt length out of range");
        e.n = static_cast<unsigned>(n);
      }
      expect('(');
      e.children = {product()};
      expect(')');
      if (e.kind == RingExpr::Kind::ProWitt && e.children[0].is_pro()) fail("Witt tower of a tower is not supported");
      return e;
    }
    fail("expected a ring");
  }

  Poly parse_poly(const std::string& text, unsigned p) {
    Poly f;
    std::size_t i = 0;
    if (text.empty()) fail("empty polynomial");
    while (i < text.size()) {
      int sign = 1;
      if (text[i] == '+' || text[i] == '-') {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
      }
      std::uint64_t coef = 1;
      bool have_coef = false;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i > start) {
        coef = std::stoull(text.substr(start, i - start));
        have_coef = true;
        if (i < text.size() && text[i] == '*') ++i;
      }
      std::size_t deg = 0;
      if (i < text.size() && text[i] == 'x') {
        ++i;
        deg = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          std::size_t s2 = i;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
          if (s2 == i) fail("expected exponent");
          deg = std::stoul(text.substr(s2, i - s2));
          if (deg > 24) fail("polynomial degree too large");
        }
      } else if (!have_coef) {
        fail("bad polynomial term");
      }
      if (i < text.size() && text[i] != '+' && text[i] != '-') fail("bad polynomial term");
      if (f.size() <= deg) f.resize(deg + 1, 0);
      unsigned c = static_cast<unsigned>(coef % p);
      f[deg] = (f[deg] + (sign > 0 ? c : (p - c) % p)) % p;
    }
    trim(f);
    return f;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::string poly_string(const Poly& f) {
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(f[i]);
      continue;
    }
    if (f[i] != 1) out += std::to_string(f[i]);
    out += 'x';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

std::string render_impl(const RingExpr& e, int level) {
  auto child = [&](const RingExpr& c, bool wrap_products) {
    std::string s = render_impl(c, level);
    return wrap_products && c.kind == RingExpr::Kind::Product ? "(" + s + ")" : s;
  };
  switch (e.kind) {
    case RingExpr::Kind::ProIntegers:
      if (level > 0) return "Z/" + Integer(Integer(1) << level).get_str();
      return e.alias;
    case RingExpr::Kind::ZMod:
      return "Z/" + std::to_string(e.modulus);
    case RingExpr::Kind::GF:
      return "GF(" + std::to_string(e.prime) + "," + poly_string(e.poly) + ")";
    case RingExpr::Kind::Product:
      return child(e.children[0], false) + "x" + child(e.children[1], true);
    case RingExpr::Kind::GroupRing:
      return child(e.children[0], true) + "[C" + std::to_string(e.n) + "]";
    case RingExpr::Kind::Witt:
      return "W" + std::to_string(e.n) + "(" + render_impl(e.children[0], level) + ")";
    case RingExpr::Kind::ProWitt:
      if (level > 0) return "W" + std::to_string(level) + "(" + render_impl(e.children[0], level) + ")";
      return "W(" + render_impl(e.children[0], level) + ")";
  }
  return {};
}

FinRing build(const RingExpr& e, unsigned level) {
  const std::string spec = e.render_at(level);
  switch (e.kind) {
    case RingExpr::Kind::ProIntegers:
      if (level == 0 || level > 30) throw ParseError("tower level out of range for " + e.render());
      return FinRing(std::make_shared<ZModModel>(std::uint64_t{1} << level), spec);
    case RingExpr::Kind::ZMod:
      return FinRing(std::make_shared<ZModModel>(e.modulus), spec);
    case RingExpr::Kind::GF:
      return FinRing(std::make_shared<GaloisModel>(e.prime, e.poly), spec);
    case RingExpr::Kind::Product:
      return FinRing(std::make_shared<ProductModel>(build(e.children[0], level), build(e.children[1], level)), spec);
    case RingExpr::Kind::GroupRing:
      return FinRing(std::make_shared<GroupRingModel>(build(e.children[0], level), e.n), spec);
    case RingExpr::Kind::Witt:
    case RingExpr::Kind::ProWitt: {
      FinRing base = build(e.children[0], level);
      unsigned n = e.kind == RingExpr::Kind::Witt ? e.n : level;
      if (n == 0) throw ParseError("tower level out of range for " + e.render());
      return WittRing(base, witt_prime(base), n).fin_ring();
    }
  }
  throw AlgebraError("unreachable ring kind");
}

using Map = std::vector<Elem>;

Map identity_map(const FinRing& r) {
  Map m(r.size());
  for (Elem a = 0; a < m.size(); ++a) m[a] = a;
  return m;
}

// Applies child maps structurally; leaf handles the base cases.
Map structural(const RingExpr& e, const FinRing& r, const std::function<Map(const RingExpr&, const FinRing&)>& rec,
               const std::function<Map(const RingExpr&, const FinRing&)>& leaf) {
  switch (e.kind) {
    case RingExpr::Kind::Product: {
      const auto* m = r.as<ProductModel>();
      Map l = rec(e.children[0], m->left()), rr = rec(e.children[1], m->right());
      Map out(r.size());
      for (Elem a = 0; a < r.size(); ++a) out[a] = m->make(l[m->first(a)], rr[m->second(a)]);
      return out;
    }
    case RingExpr::Kind::GroupRing: {
      const auto* m = r.as<GroupRingModel>();
      Map c = rec(e.children[0], m->coefficient_ring());
      Map out(r.size());
      for (Elem a = 0; a < r.size(); ++a) {
        auto cs = m->coeffs(a);
        for (auto& x : cs) x = c[x];
        out[a] = m->make(cs);
      }
      return out;
    }
    case RingExpr::Kind::Witt:
    case RingExpr::Kind::ProWitt: {
      const auto* m = r.as<WittModel>();
      Map c = rec(e.children[0], m->witt().base());
      Map out(r.size());
      for (Elem a = 0; a < r.size(); ++a) {
        auto x = m->witt().decode(a);
        for (auto& v : x) v = c[v];
        out[a] = m->witt().encode(x);
      }
      return out;
    }
    default:
      return leaf(e, r);
  }
}

Map galois_map(const RingExpr& e, const FinRing& r) {
  return structural(e, r, galois_map, [](const RingExpr& x, const FinRing& ring) -> Map {
    if (x.kind != RingExpr::Kind::GF || x.poly.size() % 2 == 0)
      throw ParseError("galois involution needs GF(p,f) factors of even degree");
    std::uint64_t q = 1;
    for (std::size_t i = 0; i < (x.poly.size() - 1) / 2; ++i) q *= x.prime;
    Map m(ring.size());
    for (Elem a = 0; a < m.size(); ++a) m[a] = ring.pow(a, q);
    return m;
  });
}

Map inversion_map(const RingExpr& e, const FinRing& r) {
  if (e.kind == RingExpr::Kind::GroupRing) {
    const auto* m = r.as<GroupRingModel>();
    Map out(r.size());
    for (Elem a = 0; a < r.size(); ++a) {
      auto c = m->coeffs(a);
      std::vector<Elem> d(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) d[(c.size() - i) % c.size()] = c[i];
      out[a] = m->make(d);
    }
    return out;
  }
  if (e.kind == RingExpr::Kind::Product) return structural(e, r, inversion_map, nullptr);
  throw ParseError("inv involution needs a group ring A[Cn] or a product of group rings");
}

Map transition_map(const RingExpr& e, const FinRing& upper, const FinRing& lower, unsigned level);

}  // namespace

bool RingExpr::is_pro() const {
  if (kind == Kind::ProIntegers || kind == Kind::ProWitt) return true;
  for (const auto& c : children)
    if (c.is_pro()) return true;
  return false;
}

std::string RingExpr::render() const { return render_impl(*this, 0); }
std::string RingExpr::render_at(unsigned level) const { return render_impl(*this, static_cast<int>(level)); }

std::string RingSpec::render() const {
  return involution == "trivial" ? expr.render() : expr.render() + " with " + involution;
}

RingSpec parse_ring_spec(std::string_view text) {
  std::string t(text);
  RingSpec spec;
  const std::string sep = " with ";
  std::size_t w = t.find(sep);
  std::string ring_part = w == std::string::npos ? t : t.substr(0, w);
  if (w != std::string::npos) {
    std::string inv = t.substr(w + sep.size());
    while (!inv.empty() && inv.back() == ' ') inv.pop_back();
    while (!inv.empty() && inv.front() == ' ') inv.erase(inv.begin());
    if (inv != "trivial" && inv != "galois" && inv != "swap" && inv != "inv")
      throw ParseError("unknown involution '" + inv + "'");
    spec.involution = inv;
  }
  std::string compact;
  for (char c : ring_part)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.empty()) throw ParseError("empty ring spec");
  spec.expr = Parser(compact).parse();
  return spec;
}

unsigned witt_prime(const FinRing& r) {
  Integer c = r.characteristic();
  for (unsigned p = 2; p <= 251; ++p) {
    if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) continue;
    Integer x = c;
    while (mpz_divisible_ui_p(x.get_mpz_t(), p)) x /= p;
    if (x != 1) break;
    return p;
  }
  throw ParseError("Witt vectors need a base ring of prime-power characteristic, got " + r.spec());
}

InvRing instantiate(const RingSpec& spec, unsigned level) {
  if (spec.is_pro() && level == 0) throw ParseError(spec.render() + " is a tower; choose a level");
  FinRing r = build(spec.expr, level);
  Map w;
  if (spec.involution == "trivial") {
    w = identity_map(r);
  } else if (spec.involution == "galois") {
    w = galois_map(spec.expr, r);
  } else if (spec.involution == "swap") {
    const auto* m = r.as<ProductModel>();
    if (!m || spec.expr.children[0].render() != spec.expr.children[1].render())
      throw ParseError("swap involution needs a product RxR of identical factors");
    w.resize(r.size());
    for (Elem a = 0; a < r.size(); ++a) w[a] = m->make(m->second(a), m->first(a));
  } else {
    w = inversion_map(spec.expr, r);
  }
  return InvRing(r, w, spec.involution);
}

InvRing parse_ring(std::string_view text) {
  RingSpec spec = parse_ring_spec(text);
  if (spec.is_pro()) throw ParseError(spec.render() + " is a tower, not a finite ring");
  return instantiate(spec, 0);
}

// ------------------------------------------------------------------ towers

namespace {

Map transition_map(const RingExpr& e, const FinRing& upper, const FinRing& lower, unsigned level) {
  if (!e.is_pro()) return identity_map(upper);
  switch (e.kind) {
    case RingExpr::Kind::ProIntegers: {
      Map m(upper.size());
      for (Elem a = 0; a < m.size(); ++a) m[a] = static_cast<Elem>(a % lower.size());
      return m;
    }
    case RingExpr::Kind::Product: {
      const auto* u = upper.as<ProductModel>();
      const auto* l = lower.as<ProductModel>();
      Map a = transition_map(e.children[0], u->left(), l->left(), level);
      Map b = transition_map(e.children[1], u->right(), l->right(), level);
      Map m(upper.size());
      for (Elem x = 0; x < m.size(); ++x) m[x] = l->make(a[u->first(x)], b[u->second(x)]);
      return m;
    }
    case RingExpr::Kind::GroupRing: {
      const auto* u = upper.as<GroupRingModel>();
      const auto* l = lower.as<GroupRingModel>();
      Map c = transition_map(e.children[0], u->coefficient_ring(), l->coefficient_ring(), level);
      Map m(upper.size());
      for (Elem x = 0; x < m.size(); ++x) {
        auto cs = u->coeffs(x);
        for (auto& v : cs) v = c[v];
        m[x] = l->make(cs);
      }
      return m;
    }
    case RingExpr::Kind::Witt: {
      const auto& u = upper.as<WittModel>()->witt();
      const auto& l = lower.as<WittModel>()->witt();
      Map c = transition_map(e.children[0], u.base(), l.base(), level);
      Map m(upper.size());
      for (Elem x = 0; x < m.size(); ++x) {
        auto v = u.decode(x);
        for (auto& y : v) y = c[y];
        m[x] = l.encode(v);
      }
      return m;
    }
    case RingExpr::Kind::ProWitt: {
      const auto& u = upper.as<WittModel>()->witt();
      const auto& l = lower.as<WittModel>()->witt();
      Map m(upper.size());
      for (Elem x = 0; x < m.size(); ++x) m[x] = l.encode(u.restriction(u.decode(x)));
      return m;
    }
    default:
      return identity_map(upper);
  }
}

bool contains_kind(const RingExpr& e, RingExpr::Kind k) {
  if (e.kind == k) return true;
  for (const auto& c : e.children)
    if (contains_kind(c, k)) return true;
  return false;
}

}  // namespace

ProRing::ProRing(RingSpec spec) : spec_(std::move(spec)) {
  if (!spec_.is_pro()) throw ParseError(spec_.render() + " is not a tower");
  max_level_ = contains_kind(spec_.expr, RingExpr::Kind::ProWitt) ? kDefaultWittLengthBound : 24;
  prime_ = witt_prime(build(spec_.expr, 1));
}

InvRing ProRing::level(unsigned n) const {
  if (n == 0 || n > max_level_) throw Refusal("tower-depth", "level " + std::to_string(n) + " is outside 1.." + std::to_string(max_level_) + " for " + name());
  return instantiate(spec_, n);
}

std::vector<Elem> ProRing::transition(unsigned n) const {
  FinRing upper = build(spec_.expr, n + 1);
  FinRing lower = build(spec_.expr, n);
  return transition_map(spec_.expr, upper, lower, n);
}

}  // namespace tcrcalc
