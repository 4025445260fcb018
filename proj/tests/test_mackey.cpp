#include "oracle.hpp"

#include "tcrcalc/errors.hpp"
#include "tcrcalc/mackey.hpp"

#include <doctest.h>

#include <set>

using namespace tcrcalc;

namespace {

// Cellular chains written out by hand, homology by enumeration. Only finite coefficients.
struct Cells {
  std::vector<FinAbGroup> groups;                      // degree k + i
  std::vector<std::function<IntVector(const IntVector&)>> d;  // d[i]: degree k+i+1 -> k+i
};

Cells cells_of(const C2Mackey& m, int k) {
  Cells c;
  c.groups.push_back(m.fixed);
  for (int j = 1; j <= k; ++j) {
    c.groups.push_back(m.underlying);
    const FinAbGroup& u = m.underlying;
    if (j == 1) {
      c.d.push_back([m](const IntVector& x) { return m.fixed.reduce(m.tr.apply(x)); });
    } else {
      const int sign = j % 2 == 0 ? -1 : 1;
      c.d.push_back([m, u, sign](const IntVector& x) {
        IntVector wx = m.w.apply(x);
        IntVector out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + sign * wx[i];
        return u.reduce(out);
      });
    }
  }
  return c;
}

oracle::Profile brute_homology(const Cells& c, std::size_t i, unsigned maxk) {
  const FinAbGroup& g = c.groups[i];
  std::set<IntVector> boundaries;
  if (i + 1 < c.groups.size())
    oracle::for_each_element(c.groups[i + 1], [&](const IntVector& x) { boundaries.insert(c.d[i](x)); });
  else
    boundaries.insert(IntVector(g.rank()));
  oracle::Profile p;
  for (unsigned k = 1; k <= maxk; ++k) {
    std::uint64_t n = 0;
    oracle::for_each_element(g, [&](const IntVector& y) {
      const bool cycle = i == 0 || c.groups[i - 1].is_zero(c.d[i - 1](y));
      if (cycle && boundaries.count(oracle::scale(g, k, y))) ++n;
    });
    p.counts.push_back(n / boundaries.size());
  }
  return p;
}

GroupHom swap2(const FinAbGroup& a) {
  FinAbGroup g = FinAbGroup::from_factors({a.invariants()[0], a.invariants()[0]});
  return GroupHom(g, g, IntMatrix{{0, 1}, {1, 0}});
}

}  // namespace

TEST_CASE("constant and fixed-point Mackey functors") {
  C2Mackey z = constant_mackey(FinAbGroup{0});
  CHECK(z.tr == GroupHom::scalar(FinAbGroup{0}, 2));
  CHECK(z.res == GroupHom::identity(FinAbGroup{0}));

  FinAbGroup z2{0, 0};
  C2Mackey perm = fixedpoint_mackey(z2, GroupHom(z2, z2, IntMatrix{{0, 1}, {1, 0}}));
  CHECK(perm.fixed == FinAbGroup{0});

  C2Mackey triv = fixedpoint_mackey(FinAbGroup{0}, GroupHom::identity(FinAbGroup{0}));
  CHECK(triv.tr == GroupHom::scalar(FinAbGroup{0}, 2));

  CHECK(norm_source_mackey().fixed == FinAbGroup{2, 0});
}

TEST_CASE("Mackey axioms are enforced") {
  FinAbGroup z4{4};
  C2Mackey bad{z4, GroupHom::identity(z4), z4, GroupHom::identity(z4), GroupHom::identity(z4), "bad"};
  CHECK_THROWS_AS(bad.validate(), AlgebraError);
  CHECK_THROWS_AS(fixedpoint_mackey(z4, GroupHom::scalar(z4, 2)), AlgebraError);
  CHECK_THROWS_AS(rep_sphere_complex(constant_mackey(z4), 3), Refusal);
}

TEST_CASE("cellular complexes square to zero") {
  for (int k = 0; k <= 8; k += 2) {
    CHECK_NOTHROW(rep_sphere_complex(constant_mackey(FinAbGroup{0}), k));
    CHECK_NOTHROW(rep_sphere_complex(norm_source_mackey(), k));
  }
}

TEST_CASE("sphere homology agrees with enumeration for finite coefficients") {
  std::vector<C2Mackey> ms{constant_mackey(FinAbGroup{2}), constant_mackey(FinAbGroup{4}),
                           constant_mackey(FinAbGroup({2, 2})), constant_mackey(FinAbGroup{6})};
  for (long d : {2L, 4L}) {
    FinAbGroup g({d, d});
    ms.push_back(fixedpoint_mackey(g, swap2(FinAbGroup{d})));
  }
  {
    FinAbGroup g({2, 4});
    ms.push_back(fixedpoint_mackey(g, GroupHom(g, g, IntMatrix{{1, 0}, {2, 1}})));
  }
  for (const C2Mackey& m : ms) {
    for (int k = 0; k <= 6; k += 2) {
      CAPTURE(m.name);
      CAPTURE(k);
      Cells c = cells_of(m, k);
      GradedGroups h = rep_sphere_homotopy(m, k);
      for (int i = 0; i <= k; ++i) CHECK(oracle::profile_of(h.at(k + i), 16) == brute_homology(c, i, 16));
    }
  }
}

TEST_CASE("sphere homology examples") {
  GradedGroups z = rep_sphere_homotopy(constant_mackey(FinAbGroup{0}), 2);
  CHECK(z.at(2) == FinAbGroup{2});
  CHECK(z.at(3).is_trivial());
  CHECK(z.at(4) == FinAbGroup{0});

  GradedGroups z4 = rep_sphere_homotopy(constant_mackey(FinAbGroup{4}), 2);
  CHECK(z4.at(2) == FinAbGroup{2});
  CHECK(z4.at(3) == FinAbGroup{2});
  CHECK(z4.at(4) == FinAbGroup{4});

  GradedGroups f4 = rep_sphere_homotopy(constant_mackey(FinAbGroup({2, 2})), 4);
  for (int i = 4; i <= 8; ++i) CHECK(f4.at(i) == FinAbGroup({2, 2}));
}

TEST_CASE("norm cofiber") {
  GradedGroups k0 = norm_cofiber_homotopy(0);
  CHECK(k0.at(0) == FinAbGroup{4});
  CHECK(k0.at(1) == FinAbGroup{2});
  for (int k = 2; k <= 6; k += 2) {
    CAPTURE(k);
    GradedGroups g = norm_cofiber_homotopy(k);
    for (int i = k; i < 2 * k; ++i) CHECK(g.at(i) == FinAbGroup{2});
    CHECK(g.at(2 * k) == FinAbGroup{4});
    CHECK(g.at(2 * k + 1) == FinAbGroup{2});
  }
  C2Mackey src = norm_source_mackey(), tgt = constant_mackey(FinAbGroup{0});
  for (int k = 0; k <= 6; k += 2) CHECK(cone_sequence_exact(rep_sphere_map(norm_map(), src, tgt, k), k - 1, 2 * k + 2));
}

TEST_CASE("suspension shifts degrees") {
  GradedGroups g = rep_sphere_homotopy(constant_mackey(FinAbGroup{0}), 2);
  GradedGroups s = suspend(g, 3);
  CHECK(s.lo() == 5);
  CHECK(s.at(5) == FinAbGroup{2});
  CHECK(s.at(7) == FinAbGroup{0});
}
