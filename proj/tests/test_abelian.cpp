#include "oracle.hpp"

#include "tcrcalc/abelian.hpp"
#include "tcrcalc/errors.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace tcrcalc;

namespace {

// Random well-defined hom: entry (i, j) must be a multiple of d_i / gcd(d_i, e_j).
GroupHom random_hom(std::mt19937& rng, const FinAbGroup& src, const FinAbGroup& tgt) {
  IntMatrix m(tgt.rank(), src.rank());
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j) {
      Integer d = tgt.invariants()[i], e = src.invariants()[j], g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
      Integer step = d / g;
      m(i, j) = step * static_cast<long>(rng() % d.get_ui());
    }
  return GroupHom(src, tgt, m);
}

FinAbGroup random_group(std::mt19937& rng) {
  static const std::vector<std::vector<long>> shapes{{2}, {4}, {2, 2}, {2, 4}, {3}, {6}, {2, 6}, {8}, {3, 3}, {2, 2, 2}, {12}};
  const auto& s = shapes[rng() % shapes.size()];
  IntVector v;
  for (long d : s) v.push_back(d);
  return FinAbGroup::from_factors(v);
}

}  // namespace

TEST_CASE("smith normal form of small matrices") {
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 0}}).diagonal() == IntVector{2, 0});
  CHECK(smith_normal_form(IntMatrix{{1, 0}, {0, 1}}).diagonal() == IntVector{1, 1});
  CHECK(smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).diagonal() == IntVector{2, 4});
}

TEST_CASE("smith normal form is idempotent and the transforms are consistent") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % 19) - 9;
    SmithForm s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(smith_normal_form(s.D).D == s.D);
    IntVector d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (sgn(d[i + 1]) != 0) CHECK(d[i + 1] % d[i] == 0);
  }
}

TEST_CASE("invariant factors normalize") {
  CHECK(FinAbGroup::from_factors({2, 3}) == FinAbGroup{6});
  CHECK(FinAbGroup::from_factors({4, 2, 0}) == FinAbGroup({2, 4, 0}));
  CHECK(FinAbGroup::from_factors({1, 1}).is_trivial());
}

TEST_CASE("kernel, image and cokernel agree with enumeration") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 300; ++t) {
    FinAbGroup src = random_group(rng), tgt = random_group(rng);
    GroupHom h = random_hom(rng, src, tgt);
    std::vector<IntVector> ker;
    std::set<IntVector> im;
    oracle::for_each_element(src, [&](const IntVector& x) {
      IntVector y = h.apply(x);
      if (tgt.is_zero(y)) ker.push_back(x);
      im.insert(tgt.reduce(y));
    });
    const unsigned maxk = 24;
    CHECK(oracle::profile_of(kernel(h).group, maxk) == oracle::profile_of_subset(src, ker, maxk));
    std::vector<IntVector> imv(im.begin(), im.end());
    CHECK(oracle::profile_of(image(h).group, maxk) == oracle::profile_of_subset(tgt, imv, maxk));

    // |coker[k]| = #{y : k y in im} / |im|
    oracle::Profile coker;
    for (unsigned k = 1; k <= maxk; ++k) {
      std::uint64_t n = 0;
      oracle::for_each_element(tgt, [&](const IntVector& y) { n += im.count(oracle::scale(tgt, k, y)); });
      coker.counts.push_back(n / im.size());
    }
    QuotientResult q = cokernel(h);
    CHECK(oracle::profile_of(q.group, maxk) == coker);
    CHECK((q.projection * h).is_zero());
    CHECK((h * kernel(h).inclusion).is_zero());
    CHECK(is_injective(h) == (ker.size() == 1));
    CHECK(is_surjective(h) == (im.size() == tgt.order().get_ui()));
  }
}

TEST_CASE("kernel and cokernel examples") {
  FinAbGroup z4{4}, z2{2}, z{0};
  CHECK(kernel(GroupHom(z4, z2, IntMatrix{{1}})).group == z2);
  CHECK(cokernel(GroupHom(z, z, IntMatrix{{2}})).group == z2);
  CHECK(cokernel(GroupHom::zero(z4, z4)).group == z4);
}

TEST_CASE("lifting and descending") {
  FinAbGroup z8{8}, z4{4}, z2{2};
  GroupHom incl(z2, z8, IntMatrix{{4}});
  GroupHom h(z4, z8, IntMatrix{{4}});
  GroupHom g = lift_through_injection(incl, h);
  CHECK(incl * g == h);
  CHECK_THROWS(lift_through_injection(incl, GroupHom(z8, z8, IntMatrix{{2}})));

  GroupHom q(z8, z4, IntMatrix{{1}});
  GroupHom d = descend_through_surjection(q, GroupHom(z8, z2, IntMatrix{{1}}));
  CHECK(d * q == GroupHom(z8, z2, IntMatrix{{1}}));
  CHECK_THROWS(descend_through_surjection(GroupHom(z8, z2, IntMatrix{{1}}), GroupHom(z8, z4, IntMatrix{{1}})));
}

TEST_CASE("ill-defined homomorphisms are rejected") {
  CHECK_THROWS_AS(GroupHom(FinAbGroup{2}, FinAbGroup{4}, IntMatrix{{1}}), AlgebraError);
  CHECK_NOTHROW(GroupHom(FinAbGroup{2}, FinAbGroup{4}, IntMatrix{{2}}));
}

TEST_CASE("tensor products of cyclic groups") {
  CHECK(tensor(FinAbGroup{4}, FinAbGroup{6}).group == FinAbGroup{2});
  CHECK(tensor(FinAbGroup{0}, FinAbGroup{6}).group == FinAbGroup{6});
  CHECK(tensor(FinAbGroup({2, 4}), FinAbGroup{4}).group == FinAbGroup({2, 4}));
}
