// Witt vector arithmetic is compared against an independent model: lift the coordinates
// to a torsion-free ring Z[x]/(f), solve the ghost equations there by exact division, and
// reduce back. Ring maps out of Z[x]/(f) commute with the universal polynomials, so the
// reduction is the Witt sum/product in A.

#include "tcrcalc/budget.hpp"
#include "tcrcalc/ring.hpp"
#include "tcrcalc/ring_spec.hpp"
#include "tcrcalc/witt.hpp"

#include <doctest.h>

#include <random>

using namespace tcrcalc;

namespace {

// Z[x]/(f) with f monic of degree d; d = 1 and f = x gives Z.
struct LiftRing {
  std::vector<long> f;  // low to high, monic
  std::size_t d() const { return f.size() - 1; }

  using E = std::vector<Integer>;
  E add(const E& a, const E& b) const {
    E c(d());
    for (std::size_t i = 0; i < d(); ++i) c[i] = a[i] + b[i];
    return c;
  }
  E mul(const E& a, const E& b) const {
    std::vector<Integer> c(2 * d(), 0);
    for (std::size_t i = 0; i < d(); ++i)
      for (std::size_t j = 0; j < d(); ++j) c[i + j] += a[i] * b[j];
    for (std::size_t k = c.size(); k-- > d();) {
      Integer lead = c[k];
      if (lead == 0) continue;
      for (std::size_t i = 0; i < d(); ++i) c[k - d() + i] -= lead * f[i];
      c[k] = 0;
    }
    c.resize(d());
    return c;
  }
  E scale(const E& a, const Integer& k) const {
    E c = a;
    for (auto& x : c) x *= k;
    return c;
  }
  E pow(E a, unsigned long e) const {
    E r(d(), 0);
    r[0] = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

// A finite ring that is a quotient of Z[x]/(f) by (m), with explicit lift and reduction.
struct Quotient {
  FinRing ring;
  LiftRing lift;
  unsigned m = 0;
  std::vector<LiftRing::E> lifts;  // element -> lift
  std::function<Elem(const LiftRing::E&)> reduce;
};

Quotient zmod(unsigned n) {
  Quotient q;
  q.ring = parse_ring("Z/" + std::to_string(n)).ring();
  q.lift.f = {0, 1};
  q.m = n;
  for (Elem a = 0; a < n; ++a) q.lifts.push_back({Integer(a)});
  q.reduce = [n](const LiftRing::E& e) {
    Integer r = e[0] % n;
    if (r < 0) r += n;
    return static_cast<Elem>(r.get_ui());
  };
  return q;
}

Quotient galois(unsigned p, std::vector<long> f, const std::string& spec) {
  Quotient q;
  q.ring = parse_ring(spec).ring();
  q.lift.f = f;
  q.m = p;
  const GaloisModel* g = q.ring.as<GaloisModel>();
  REQUIRE(g != nullptr);
  for (Elem a = 0; a < q.ring.size(); ++a) {
    LiftRing::E e;
    for (unsigned c : g->coeffs(a)) e.push_back(Integer(c));
    e.resize(f.size() - 1, 0);
    q.lifts.push_back(e);
  }
  q.reduce = [g, p](const LiftRing::E& e) {
    std::vector<unsigned> c;
    for (const Integer& x : e) {
      Integer r = x % p;
      if (r < 0) r += p;
      c.push_back(static_cast<unsigned>(r.get_ui()));
    }
    return g->make(c);
  };
  return q;
}

using LiftVec = std::vector<LiftRing::E>;

std::vector<LiftRing::E> ghosts(const LiftRing& L, unsigned p, const LiftVec& a) {
  std::vector<LiftRing::E> w;
  for (std::size_t i = 0; i < a.size(); ++i) {
    LiftRing::E s(L.d(), 0);
    Integer pj = 1;
    for (std::size_t j = 0; j <= i; ++j) {
      unsigned long e = 1;
      for (std::size_t k = 0; k < i - j; ++k) e *= p;
      s = L.add(s, L.scale(L.pow(a[j], e), pj));
      pj *= p;
    }
    w.push_back(s);
  }
  return w;
}

// Witt vector whose ghost components are the given ones.
LiftVec from_ghosts(const LiftRing& L, unsigned p, const std::vector<LiftRing::E>& w) {
  LiftVec s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    LiftRing::E acc = w[i];
    Integer pj = 1;
    for (std::size_t j = 0; j < i; ++j) {
      unsigned long e = 1;
      for (std::size_t k = 0; k < i - j; ++k) e *= p;
      acc = L.add(acc, L.scale(L.pow(s[j], e), -pj));
      pj *= p;
    }
    Integer pi = pj;
    for (auto& c : acc) {
      REQUIRE(c % pi == 0);
      c /= pi;
    }
    s.push_back(acc);
  }
  return s;
}

struct Oracle {
  const Quotient& q;
  unsigned p;
  LiftVec lift(const WittVector& x) const {
    LiftVec out;
    for (Elem e : x) out.push_back(q.lifts[e]);
    return out;
  }
  WittVector reduce(const LiftVec& x) const {
    WittVector out;
    for (const auto& e : x) out.push_back(q.reduce(e));
    return out;
  }
  WittVector add(const WittVector& x, const WittVector& y) const {
    auto gx = ghosts(q.lift, p, lift(x)), gy = ghosts(q.lift, p, lift(y));
    for (std::size_t i = 0; i < gx.size(); ++i) gx[i] = q.lift.add(gx[i], gy[i]);
    return reduce(from_ghosts(q.lift, p, gx));
  }
  WittVector mul(const WittVector& x, const WittVector& y) const {
    auto gx = ghosts(q.lift, p, lift(x)), gy = ghosts(q.lift, p, lift(y));
    for (std::size_t i = 0; i < gx.size(); ++i) gx[i] = q.lift.mul(gx[i], gy[i]);
    return reduce(from_ghosts(q.lift, p, gx));
  }
  // w_i(F x) = w_{i+1}(x)
  WittVector frobenius(const WittVector& x) const {
    auto g = ghosts(q.lift, p, lift(x));
    g.erase(g.begin());
    return reduce(from_ghosts(q.lift, p, g));
  }
};

std::vector<Quotient> small_rings() {
  std::vector<Quotient> out;
  for (unsigned n = 2; n <= 9; ++n) out.push_back(zmod(n));
  out.push_back(galois(2, {1, 1, 1}, "GF(2,x^2+x+1)"));
  out.push_back(galois(2, {1, 1, 0, 1}, "GF(2,x^3+x+1)"));
  out.push_back(galois(3, {1, 0, 1}, "GF(3,x^2+1)"));
  return out;
}

WittVector vec_of(const WittRing& w, Elem e) { return w.decode(e); }

}  // namespace

TEST_CASE("structure polynomials for p = 2, n = 2") {
  const WittPolySet& s = build_polys(2, 2);
  std::size_t nv = s.nvars();
  IntPoly a0 = IntPoly::variable(nv, s.a(0)), a1 = IntPoly::variable(nv, s.a(1));
  IntPoly b0 = IntPoly::variable(nv, s.b(0)), b1 = IntPoly::variable(nv, s.b(1));
  CHECK(s.sum()[0] == a0 + b0);
  CHECK(s.product()[0] == a0 * b0);
  CHECK(s.sum()[1] == a1 + b1 - a0 * b0);
  CHECK(s.product()[1] == a0.pow(2) * b1 + a1 * b0.pow(2) + (a1 * b1).scaled(2));
}

TEST_CASE("W_n(F_2) is cyclic of order 2^n") {
  Budget b;
  FinRing f2 = parse_ring("Z/2").ring();
  for (unsigned n = 1; n <= 4; ++n) CHECK(witt_structure(f2, 2, n, b).group() == FinAbGroup{long(1) << n});
  WittRing w2(f2, 2, 2);
  CHECK(w2.add({1, 0}, {1, 0}) == WittVector{0, 1});
  CHECK(w2.add({1, 0}, {1, 1}) == WittVector{0, 0});
  CHECK(witt_structure(parse_ring("GF(2,x^2+x+1)").ring(), 2, 2, b).group() == FinAbGroup({4, 4}));
}

TEST_CASE("sums and products agree with the ghost-lift oracle") {
  std::mt19937 rng(5);
  for (const Quotient& q : small_rings()) {
    for (unsigned p : {2u, 3u}) {
      Oracle o{q, p};
      for (unsigned n = 1; n <= 3; ++n) {
        WittRing w(q.ring, p, n);
        CAPTURE(q.ring.spec());
        CAPTURE(p);
        CAPTURE(n);
        const bool exhaustive = w.size() <= 256;
        const std::size_t trials = exhaustive ? w.size() * w.size() : 4000;
        bool ok = true;
        for (std::size_t t = 0; t < trials && ok; ++t) {
          Elem ex = exhaustive ? static_cast<Elem>(t / w.size()) : static_cast<Elem>(rng() % w.size());
          Elem ey = exhaustive ? static_cast<Elem>(t % w.size()) : static_cast<Elem>(rng() % w.size());
          WittVector x = vec_of(w, ex), y = vec_of(w, ey);
          ok = w.add(x, y) == o.add(x, y) && w.mul(x, y) == o.mul(x, y);
        }
        CHECK(ok);
        if (n >= 2) {
          bool fok = true;
          for (Elem e = 0; e < w.size() && fok; ++e) fok = w.frobenius(w.decode(e)) == o.frobenius(w.decode(e));
          CHECK(fok);
        }
      }
    }
  }
}

TEST_CASE("F V = p, V(F(x) y) = x V(y), R F = F R, R V = V R") {
  for (const Quotient& q : small_rings()) {
    for (unsigned p : {2u, 3u}) {
      for (unsigned n = 1; n <= 3; ++n) {
        CAPTURE(q.ring.spec());
        CAPTURE(p);
        CAPTURE(n);
        WittRing wn(q.ring, p, n), wn1(q.ring, p, n + 1);
        bool fv = true, proj = true;
        for (Elem e = 0; e < wn.size(); ++e) {
          WittVector y = wn.decode(e);
          fv = fv && wn1.frobenius(wn.verschiebung(y)) == wn.scalar(p, y);
        }
        if (n <= 2 || wn1.size() * wn.size() <= 70000) {
          for (Elem ex = 0; ex < wn1.size(); ++ex)
            for (Elem ey = 0; ey < wn.size(); ++ey) {
              WittVector x = wn1.decode(ex), y = wn.decode(ey);
              proj = proj && wn.verschiebung(wn.mul(wn1.frobenius(x), y)) == wn1.mul(x, wn.verschiebung(y));
            }
        }
        CHECK(fv);
        CHECK(proj);
        if (n >= 2) {
          WittRing wn2(q.ring, p, n + 1), wm(q.ring, p, n - 1);
          bool rf = true, rv = true;
          for (Elem e = 0; e < wn2.size(); ++e) {
            WittVector x = wn2.decode(e);
            // both W_{n+1} -> W_{n-1}
            rf = rf && wn.frobenius(wn2.restriction(x)) == wn.restriction(wn2.frobenius(x));
          }
          for (Elem e = 0; e < wn.size(); ++e) {
            WittVector y = wn.decode(e);
            rv = rv && wn1.restriction(wn.verschiebung(y)) == wm.verschiebung(wn.restriction(y));
          }
          CHECK(rf);
          CHECK(rv);
        }
      }
    }
  }
}

TEST_CASE("ghost components are a natural ring map") {
  for (const Quotient& q : small_rings()) {
    const FinRing& a = q.ring;
    for (unsigned p : {2u, 3u}) {
      WittRing w(a, p, 2);
      bool ok = true;
      for (Elem ex = 0; ex < w.size(); ++ex)
        for (Elem ey = 0; ey < w.size(); ++ey) {
          WittVector x = w.decode(ex), y = w.decode(ey);
          auto gx = w.ghost(x), gy = w.ghost(y), gs = w.ghost(w.add(x, y)), gp = w.ghost(w.mul(x, y));
          for (std::size_t i = 0; i < gx.size(); ++i)
            ok = ok && gs[i] == a.add(gx[i], gy[i]) && gp[i] == a.mul(gx[i], gy[i]);
        }
      CHECK(ok);
    }
  }
}

TEST_CASE("teichmuller lifts are multiplicative") {
  FinRing f4 = parse_ring("GF(2,x^2+x+1)").ring();
  WittRing w(f4, 2, 3);
  for (Elem a = 0; a < f4.size(); ++a)
    for (Elem b = 0; b < f4.size(); ++b) CHECK(w.mul(w.teichmuller(a), w.teichmuller(b)) == w.teichmuller(f4.mul(a, b)));
}

TEST_CASE("F = R on W(F_p)") {
  for (unsigned p : {2u, 3u}) {
    FinRing fp = parse_ring("Z/" + std::to_string(p)).ring();
    for (unsigned n = 2; n <= 4; ++n) {
      WittRing w(fp, p, n);
      for (Elem e = 0; e < w.size(); ++e) CHECK(w.frobenius(w.decode(e)) == w.restriction(w.decode(e)));
    }
  }
}

TEST_CASE("functoriality along F_2 -> F_4 and Z/4 -> Z/2") {
  struct Case {
    std::string src, tgt;
    unsigned p;
    std::function<std::vector<Elem>(const FinRing&, const FinRing&)> map;
  };
  std::vector<Case> cases{
      {"Z/2", "GF(2,x^2+x+1)", 2, [](const FinRing& s, const FinRing& t) {
         std::vector<Elem> m(s.size());
         for (Elem a = 0; a < s.size(); ++a) m[a] = t.from_int(Integer(a));
         return m;
       }},
      {"Z/4", "Z/2", 2, [](const FinRing& s, const FinRing& t) {
         std::vector<Elem> m(s.size());
         for (Elem a = 0; a < s.size(); ++a) m[a] = t.from_int(Integer(a));
         return m;
       }},
  };
  for (const Case& c : cases) {
    FinRing s = parse_ring(c.src).ring(), t = parse_ring(c.tgt).ring();
    std::vector<Elem> f = c.map(s, t);
    WittRing s3(s, c.p, 3), t3(t, c.p, 3), s2(s, c.p, 2), t2(t, c.p, 2);
    for (Elem e = 0; e < s3.size(); ++e) {
      WittVector x = s3.decode(e);
      WittVector fx = witt_functor(t3, f, x);
      CHECK(t3.frobenius(fx) == witt_functor(t2, f, s3.frobenius(x)));
      CHECK(t3.restriction(fx) == witt_functor(t2, f, s3.restriction(x)));
    }
    for (Elem e = 0; e < s2.size(); ++e) {
      WittVector y = s2.decode(e);
      CHECK(t2.verschiebung(witt_functor(t2, f, y)) == witt_functor(t3, f, s2.verschiebung(y)));
    }
  }
}

TEST_CASE("restriction W_3(F_2) -> W_2(F_2) is reduction Z/8 -> Z/4") {
  Budget b;
  FinRing f2 = parse_ring("Z/2").ring();
  WittStructure w3 = witt_structure(f2, 2, 3, b), w2 = witt_structure(f2, 2, 2, b);
  GroupHom r = witt_restriction_hom(w3, w2);
  CHECK(is_surjective(r));
  CHECK(kernel(r).group == FinAbGroup{2});
  CHECK(witt_frobenius_hom(w3, w2) == r);
}
