#include "oracle.hpp"

#include "tcrcalc/errors.hpp"
#include "tcrcalc/ring_spec.hpp"
#include "tcrcalc/tcr.hpp"

#include <doctest.h>

using namespace tcrcalc;

namespace {

PerfectChar2 field(const char* spec) { return perfect_char2(parse_ring(spec).ring()); }

std::size_t rank_mod2(const GroupHom& h) {
  // Every tower group is elementary abelian here, so the image is a vector space.
  return image(h).group.rank();
}

}  // namespace

TEST_CASE("perfect_char2 accepts perfect rings only") {
  CHECK(field("Z/2").dim() == 1);
  CHECK(field("GF(2,x^2+x+1)").dim() == 2);
  CHECK(perfect_char2(parse_ring("Z/2xGF(2,x^2+x+1)").ring()).dim() == 3);
  CHECK_THROWS_AS(perfect_char2(parse_ring("Z/4").ring()), Refusal);
  CHECK_THROWS_AS(perfect_char2(parse_ring("Z/2[C2]").ring()), Refusal);
  CHECK_THROWS_AS(perfect_char2(parse_ring("Z/3").ring()), Refusal);
  PerfectChar2 k = field("GF(2,x^2+x+1)");
  CHECK(k.square * k.sqrt == GroupHom::identity(k.chart.group()));
}

TEST_CASE("level two of the oracle tower has the expected order") {
  // Count {(a, b, c) : r a = c, σ r b = c} by enumeration.
  struct Case {
    const char* ring;
    int max_degree;
  };
  for (Case cs : {Case{"Z/2", 4}, Case{"GF(2,x^2+x+1)", 1}}) {
    PerfectChar2 k = field(cs.ring);
    Tower t = oracle_tower(k, 2, cs.max_degree);
    for (int d = 0; d <= cs.max_degree; ++d) {
      FixedPointData x = fixed_point_data(k, d);
      auto xs = oracle::elements(x.fixed);
      std::uint64_t count = 0;
      for (const IntVector& a : xs) {
        IntVector c = x.underlying.reduce(x.r.apply(a));
        for (const IntVector& b : xs) count += x.underlying.reduce(x.sigma.apply(x.r.apply(b))) == c ? 1 : 0;
      }
      CHECK(t.stages[1].groups.at(d).order() == count);
      CHECK(count == x.underlying.order());
    }
  }
}

TEST_CASE("oracle tower matches the closed form") {
  struct Case {
    const char* ring;
    unsigned levels;
    int max_degree;
  };
  for (Case cs : {Case{"Z/2", 5, 6}, Case{"GF(2,x^2+x+1)", 5, 6}}) {
    CAPTURE(cs.ring);
    PerfectChar2 k = field(cs.ring);
    Tower o = oracle_tower(k, cs.levels, cs.max_degree);
    Tower c = closed_form_tower(k, cs.levels, cs.max_degree);
    TowerComparison cmp = compare_towers(o, c);
    CHECK(cmp.ok);
    for (const auto& f : cmp.failures) MESSAGE(f);
    for (unsigned l = 0; l < cs.levels; ++l)
      for (int d = 0; d <= cs.max_degree; ++d) {
        CHECK(o.stages[l].groups.at(d) == c.stages[l].groups.at(d));
        GroupHom s = o.stages[l].sigma.at(d);
        CHECK(s * s == GroupHom::identity(s.source()));
      }
  }
}

TEST_CASE("comparison detects a wrong tower") {
  PerfectChar2 k = field("Z/2");
  Tower o = oracle_tower(k, 3, 2);
  Tower c = closed_form_tower(k, 3, 2);
  c.stages[2].R[2] = GroupHom::zero(c.stages[2].groups.at(2), c.stages[1].groups.at(2));
  CHECK_FALSE(compare_towers(o, c).ok);
}

TEST_CASE("ranks of R and F") {
  for (const char* ring : {"Z/2", "GF(2,x^2+x+1)"}) {
    PerfectChar2 k = field(ring);
    const std::size_t e = k.dim();
    for (unsigned l = 1; l <= 3; ++l) {
      TowerLevel t = trr_phi_tower(k.ring, l, Window{0, 6});
      for (int d = 0; d <= 6; ++d) {
        CAPTURE(d);
        CHECK(t.groups.at(d).rank() == e * static_cast<std::size_t>(d + 1));
        CHECK(rank_mod2(t.R.at(d)) == (d % 2 == 0 ? e : 0));
        CHECK(rank_mod2(t.F.at(d)) == e * static_cast<std::size_t>(d / 2 + 1));
        CHECK(t.sigma.at(d) * t.sigma.at(d) == GroupHom::identity(t.groups.at(d)));
        CHECK(t.labels.at(d).size() == static_cast<std::size_t>(d + 1));
      }
    }
  }
}

TEST_CASE("R is the square root on the diagonal summand") {
  PerfectChar2 k = field("GF(2,x^2+x+1)");
  TowerLevel t = trr_phi_tower(k.ring, 3, Window{2, 2});
  const GroupHom& r = t.R.at(2);
  // Coordinates come in blocks of dim(k) in label order; the diagonal label (1, 1) is block 1.
  const std::size_t e = k.dim();
  for (std::size_t i = 0; i < 3 * e; ++i)
    for (std::size_t j = 0; j < 3 * e; ++j) {
      Integer expect = (i / e == 1 && j / e == 1) ? k.sqrt.matrix()(i % e, j % e) : Integer(0);
      CHECK(r.matrix()(i, j) % 2 == expect % 2);
    }
}

TEST_CASE("trr_phi_oracle agrees with the closed-form level") {
  TowerLevel o = trr_phi_oracle(parse_ring("Z/2").ring(), 2, Window{0, 4});
  TowerLevel c = trr_phi_tower(parse_ring("Z/2").ring(), 2, Window{0, 4});
  for (int d = 0; d <= 4; ++d) {
    CHECK(o.groups.at(d) == c.groups.at(d));
    CHECK(rank_mod2(o.R.at(d)) == rank_mod2(c.R.at(d)));
    CHECK(rank_mod2(o.F.at(d)) == rank_mod2(c.F.at(d)));
  }
}

TEST_CASE("limits") {
  TowerLimit f2 = trr_phi_limit(parse_ring("Z/2").ring(), Window{0, 8});
  for (int d = 0; d <= 8; ++d) CHECK(f2.groups.at(d) == (d % 2 == 0 ? FinAbGroup{2} : FinAbGroup{}));
  CHECK(f2.frobenius_is_square);

  PerfectChar2 k = field("GF(2,x^2+x+1)");
  TowerLimit f4 = trr_phi_limit(k.ring, Window{0, 8});
  CHECK(f4.frobenius_is_square);
  for (int d = 0; d <= 8; ++d) {
    CHECK(f4.groups.at(d) == (d % 2 == 0 ? FinAbGroup({2, 2}) : FinAbGroup{}));
    if (d % 2 == 0) CHECK(is_injective(f4.to_level1.at(d)));
  }
}

TEST_CASE("refusals") {
  CHECK_THROWS_AS(trr_phi_tower(parse_ring("Z/4").ring(), 1, Window{0, 2}), Refusal);
  CHECK_THROWS_AS(trr_phi_limit(parse_ring("Z/2[C2]").ring(), Window{0, 2}), Refusal);
  Budget b;
  CHECK_THROWS_AS(trr_phi_limit(parse_ring("Z/2").ring(), Window{0, 2}, 40, b), Refusal);
}
