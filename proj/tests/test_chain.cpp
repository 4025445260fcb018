#include "oracle.hpp"

#include "tcrcalc/chain.hpp"
#include "tcrcalc/errors.hpp"
#include "tcrcalc/graded.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace tcrcalc;

namespace {

GroupHom random_hom(std::mt19937& rng, const FinAbGroup& src, const FinAbGroup& tgt) {
  IntMatrix m(tgt.rank(), src.rank());
  for (std::size_t i = 0; i < tgt.rank(); ++i)
    for (std::size_t j = 0; j < src.rank(); ++j) {
      Integer d = tgt.invariants()[i], e = src.invariants()[j], g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), e.get_mpz_t());
      m(i, j) = (d / g) * static_cast<long>(rng() % d.get_ui());
    }
  return GroupHom(src, tgt, m);
}

}  // namespace

TEST_CASE("homology of 0 -> Z -2-> Z -> 0") {
  FinAbGroup z{0};
  ChainComplex c(0, {z, z}, {GroupHom(z, z, IntMatrix{{2}})});
  CHECK(homology(c, 0) == FinAbGroup{2});
  CHECK(homology(c, 1).is_trivial());
  CHECK(homology(c, 5).is_trivial());
}

TEST_CASE("d∘d != 0 is rejected") {
  FinAbGroup z{0};
  GroupHom one = GroupHom::identity(z);
  CHECK_THROWS_AS(ChainComplex(0, {z, z, z}, {one, one}), AlgebraError);
}

TEST_CASE("middle homology agrees with enumeration") {
  std::mt19937 rng(11);
  const std::vector<FinAbGroup> shapes{FinAbGroup{2}, FinAbGroup{4}, FinAbGroup({2, 2}), FinAbGroup({2, 4}),
                                       FinAbGroup{8}, FinAbGroup({2, 8})};
  for (int t = 0; t < 150; ++t) {
    FinAbGroup c0 = shapes[rng() % shapes.size()], c1 = shapes[rng() % shapes.size()], c2 = shapes[rng() % shapes.size()];
    GroupHom d1 = random_hom(rng, c1, c0);
    SubgroupResult z = kernel(d1);
    GroupHom d2 = z.inclusion * random_hom(rng, c2, z.group);
    ChainComplex c(0, {c0, c1, c2}, {d1, d2});

    std::set<IntVector> boundaries;
    oracle::for_each_element(c2, [&](const IntVector& x) { boundaries.insert(c1.reduce(d2.apply(x))); });
    oracle::Profile expected;
    for (unsigned k = 1; k <= 16; ++k) {
      std::uint64_t n = 0;
      oracle::for_each_element(c1, [&](const IntVector& y) {
        if (c0.is_zero(d1.apply(y)) && boundaries.count(oracle::scale(c1, k, y))) ++n;
      });
      expected.counts.push_back(n / boundaries.size());
    }
    CHECK(oracle::profile_of(homology(c, 1), 16) == expected);
  }
}

TEST_CASE("cones") {
  FinAbGroup z{0}, z4{4};
  ChainComplex c(0, {z, z}, {GroupHom(z, z, IntMatrix{{4}})});
  SUBCASE("cone of the identity is acyclic") {
    ChainMap id{c, c, {{0, GroupHom::identity(z)}, {1, GroupHom::identity(z)}}};
    ChainComplex cone = mapping_cone(id);
    for (int i = -1; i <= 3; ++i) CHECK(homology(cone, i).is_trivial());
    CHECK(cone_sequence_exact(id, -1, 3));
  }
  SUBCASE("cone of zero splits") {
    ChainMap zero{c, c, {}};
    ChainComplex cone = mapping_cone(zero);
    CHECK(homology(cone, 0) == z4);
    CHECK(homology(cone, 1) == z4);
    CHECK(cone_sequence_exact(zero, -1, 3));
  }
  SUBCASE("non-commuting maps are rejected") {
    ChainMap bad{c, c, {{0, GroupHom::identity(z)}}};
    CHECK_THROWS_AS(mapping_cone(bad), AlgebraError);
  }
}

TEST_CASE("graded kernel of a difference") {
  FinAbGroup v({2, 2});
  GroupHom a = GroupHom::identity(v);
  GroupHom swap(v, v, IntMatrix{{0, 1}, {1, 0}});
  auto kc = graded_kernel_of_difference(GradedHom{{0, a}}, GradedHom{{0, a}});
  CHECK(kc.at(0).kernel.group == v);
  CHECK(kc.at(0).cokernel.group == v);
  kc = graded_kernel_of_difference(GradedHom{{0, a}}, GradedHom{{0, swap}});
  CHECK(kc.at(0).kernel.group == FinAbGroup{2});
  CHECK(kc.at(0).cokernel.group == FinAbGroup{2});
}
