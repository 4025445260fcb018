#include "oracle.hpp"

#include "tcrcalc/errors.hpp"
#include "tcrcalc/ring_spec.hpp"
#include "tcrcalc/tcr.hpp"

#include <doctest.h>

#include <set>

using namespace tcrcalc;

namespace {

struct KerCoker {
  std::uint64_t ker = 0, coker = 0;
};

// x -> x + x^2 on a finite ring, counted directly.
KerCoker artin_schreier(const FinRing& a) {
  std::set<Elem> im;
  KerCoker out;
  for (Elem x = 0; x < a.size(); ++x) {
    Elem y = a.add(x, a.mul(x, x));
    if (y == a.zero()) ++out.ker;
    im.insert(y);
  }
  out.coker = a.size() / im.size();
  return out;
}

// Order of ker and coker of r - f in degree d, by enumerating the fixed level.
KerCoker r_minus_f(const PerfectChar2& k, int d) {
  FixedPointData x = fixed_point_data(k, d);
  std::set<IntVector> im;
  KerCoker out;
  oracle::for_each_element(x.fixed, [&](const IntVector& v) {
    IntVector a = x.r.apply(v), b = x.f.apply(v);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    a = x.underlying.reduce(a);
    if (x.underlying.is_zero(a)) ++out.ker;
    im.insert(a);
  });
  out.coker = x.underlying.order().get_ui() / im.size();
  return out;
}

bool elementary_two(const FinAbGroup& g) {
  for (const Integer& d : g.invariants())
    if (d != 2) return false;
  return true;
}

}  // namespace

TEST_CASE("characteristic-two fields") {
  for (const char* spec : {"Z/2", "GF(2,x^2+x+1)", "GF(2,x^3+x+1)"}) {
    CAPTURE(spec);
    FinRing k = parse_ring(spec).ring();
    PerfectChar2 pk = perfect_char2(k);
    KerCoker as = artin_schreier(k);
    CHECK(as.ker == 2);
    CHECK(as.coker == 2);
    GradedGroups g = tcr_phi_char2_field(k, Window{-2, 8});
    GradedGroups alg = tcr_phi_perfect_algebra(k, Window{-2, 8});
    CHECK(g == alg);
    CHECK(g.at(-2).is_trivial());
    for (int d = -1; d <= 8; ++d) {
      CAPTURE(d);
      CHECK(elementary_two(g.at(d)));
      CHECK(g.at(d).order() == (d % 2 == 0 ? as.ker : as.coker));
    }
    // The fibre sequence 0 -> coker_{d+1} -> π_d -> ker_d -> 0, from enumerated r - f.
    for (int d = 0; d <= (k.size() > 2 ? 3 : 5); ++d) {
      KerCoker here = r_minus_f(pk, d), next = r_minus_f(pk, d + 1);
      CHECK(g.at(d).order() == here.ker * next.coker);
    }
  }
}

TEST_CASE("perfect algebras") {
  FinRing a = parse_ring("Z/2xGF(2,x^2+x+1)").ring();
  KerCoker as = artin_schreier(a);
  GradedGroups g = tcr_phi_perfect_algebra(a, Window{-1, 6});
  for (int d = -1; d <= 6; ++d) {
    CHECK(elementary_two(g.at(d)));
    CHECK(g.at(d).order() == (d % 2 == 0 ? as.ker : as.coker));
  }
  CHECK(g.at(0) == FinAbGroup({2, 2}));
  CHECK_THROWS_AS(tcr_phi_perfect_algebra(parse_ring("Z/2[C2]").ring(), Window{0, 2}), Refusal);
}

TEST_CASE("torsion-free lifts") {
  const GradedGroups expected = [] {
    GradedGroups e(-2, 9);
    const FinAbGroup pattern[4] = {FinAbGroup{8}, FinAbGroup{2}, FinAbGroup{}, FinAbGroup{2}};
    for (int d = -1; d <= 9; ++d) e.set(d, pattern[(d + 4) % 4]);
    return e;
  }();
  for (const char* spec : {"Z", "Z_2", "W(Z/2)"}) {
    CAPTURE(spec);
    TorsionFreeResult r = tcr_phi_torsionfree(ProRing(parse_ring_spec(spec)), Window{-2, 9});
    for (int d = -2; d <= 9; ++d) CHECK(r.groups.at(d) == expected.at(d));
  }
  CHECK(tcr_phi_Z_oracle(Window{-2, 9}) == expected);
  CHECK(bockstein_class() == 1);

  TorsionFreeResult w = tcr_phi_torsionfree(ProRing(parse_ring_spec("W(GF(2,x^2+x+1))")), Window{-1, 9});
  for (int l = 0; 4 * l + 1 <= 9; ++l) CHECK(w.groups.at(4 * l + 1) == FinAbGroup{2});
  CHECK(w.groups.at(-1) == FinAbGroup{2});
  // B = Z_2[ζ], ζ^2 + ζ + 1 = 0. The span of b + b^2 is Z + 2ζZ (from ζ + ζ^2 = -1 and
  // (1+ζ) + (1+ζ)^2 = 1 + 2ζ), so B/4<b + b^2> = Z/4 ⊕ Z/8, and pr + pr^2 kills {a + bζ : b even}.
  CHECK(w.groups.at(0) == FinAbGroup({4, 4}));

  CHECK_THROWS_AS(tcr_phi_torsionfree(ProRing(parse_ring_spec("Z")), Window{0, 2}, 1), Refusal);
}

TEST_CASE("odd primes: transfer quotient and vanishing") {
  struct Case {
    const char* spec;
    std::uint64_t quotient;
    bool vanishes;
  };
  for (Case c : {Case{"Z/9", 1, true}, Case{"Z/2", 2, false}, Case{"Z/4", 2, false}, Case{"Z/3[C2] with inv", 1, true},
                 Case{"GF(2,x^2+x+1) with galois", 1, true}, Case{"GF(2,x^2+x+1)", 4, false}}) {
    CAPTURE(c.spec);
    InvRing a = parse_ring(c.spec);
    OddResult r = tcr_phi_odd(a, 3);
    // Brute-force A^{Z/2} / {a + w(a)}.
    std::size_t fixed = 0;
    std::set<Elem> tr;
    for (Elem x = 0; x < a.ring().size(); ++x) {
      fixed += a.w(x) == x ? 1 : 0;
      tr.insert(a.ring().add(x, a.w(x)));
    }
    CHECK(r.quotient.order() == fixed / tr.size());
    CHECK(r.quotient.order() == c.quotient);
    CHECK(r.vanishes == c.vanishes);
    CHECK(r.transfer_surjective == (c.quotient == 1));
  }
  CHECK(tcr_phi_odd(parse_ring("Z/2"), 3).pi0 == FinAbGroup{2});
  CHECK(tcr_phi_odd(parse_ring("Z/4"), 3).pi0 == FinAbGroup{2});
  CHECK_THROWS_AS(tcr_phi_odd(parse_ring("Z/2"), 2), ParseError);
}

TEST_CASE("odd perfect fields") {
  for (unsigned n = 1; n <= 3; ++n) {
    OddFieldResult f3 = tcr_odd_perfect_field(parse_ring("Z/3").ring(), 3, n);
    Integer e = 1;
    for (unsigned i = 0; i < n; ++i) e *= 3;
    CHECK(f3.groups.at(0) == FinAbGroup(IntVector{e}));
    CHECK(f3.groups.at(-1) == FinAbGroup(IntVector{e}));
  }

  // F_9 at depth 2: R - F : W_3 -> W_2, enumerated.
  FinRing f9 = parse_ring("GF(3,x^2+1)").ring();
  OddFieldResult r = tcr_odd_perfect_field(f9, 3, 2);
  WittRing w3(f9, 3, 3), w2(f9, 3, 2);
  std::set<WittVector> kernel_image, im;
  for (Elem e = 0; e < w3.size(); ++e) {
    WittVector x = w3.decode(e);
    WittVector d = w2.sub(w3.restriction(x), w3.frobenius(x));
    im.insert(d);
    if (d == w2.zero()) kernel_image.insert(w3.restriction(x));
  }
  auto profile = [&](const std::set<WittVector>& s, bool quotient) {
    oracle::Profile p;
    for (unsigned k = 1; k <= 27; ++k) {
      std::uint64_t n = 0;
      if (quotient) {
        for (Elem e = 0; e < w2.size(); ++e) n += im.count(w2.scalar(k, w2.decode(e)));
        n /= im.size();
      } else {
        for (const auto& x : s) n += w2.scalar(k, x) == w2.zero() ? 1 : 0;
      }
      p.counts.push_back(n);
    }
    return p;
  };
  CHECK(oracle::profile_of(r.groups.at(0), 27) == profile(kernel_image, false));
  CHECK(oracle::profile_of(r.groups.at(-1), 27) == profile(im, true));
  CHECK(r.groups.at(0) == FinAbGroup{9});

  CHECK_THROWS_AS(tcr_odd_perfect_field(parse_ring("Z/9").ring(), 3, 2), Refusal);
  CHECK_THROWS_AS(tcr_odd_perfect_field(parse_ring("Z/2").ring(), 3, 2), Refusal);
}
