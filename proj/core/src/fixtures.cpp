#include "tcrcalc/fixtures.hpp"

#include "tcrcalc/barcalc.hpp"
#include "tcrcalc/chain.hpp"
#include "tcrcalc/commands.hpp"
#include "tcrcalc/errors.hpp"
#include "tcrcalc/mackey.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

namespace tcrcalc {

namespace {

const char* const kSuite = R"json({
  "fixtures": [
    {"id": "c01-witt-f2-n1", "criterion": 1, "kind": "command",
     "params": {"command": "witt", "ring": "Z/2", "level": 1}, "expect": {"group": {"invariants": [2]}}},
    {"id": "c01-witt-f2-n2", "criterion": 1, "kind": "command",
     "params": {"command": "witt", "ring": "Z/2", "level": 2}, "expect": {"group": {"invariants": [4]}}},
    {"id": "c01-witt-f2-n3", "criterion": 1, "kind": "command",
     "params": {"command": "witt", "ring": "Z/2", "level": 3}, "expect": {"group": {"invariants": [8]}}},
    {"id": "c01-witt-f2-n4", "criterion": 1, "kind": "command",
     "params": {"command": "witt", "ring": "Z/2", "level": 4}, "expect": {"group": {"invariants": [16]}}},

    {"id": "c02-bredon-complex-constant-z-k2", "criterion": 2, "kind": "probe",
     "params": {"name": "constant_z_complex", "k": 2}, "expect": {"groups": {"2": [2], "3": [], "4": [0]}}},
    {"id": "c02-bredon-complex-norm-source-k2", "criterion": 2, "kind": "probe",
     "params": {"name": "norm_source_complex", "k": 2}, "expect": {"groups": {"2": [2], "3": [], "4": [2, 0]}}},
    {"id": "c02-bredon-constant-z-k2", "criterion": 2, "kind": "command",
     "params": {"command": "bredon", "mode": "constant", "ring": "Z", "level": 2},
     "expect": {"groups": {"2": [2], "3": [], "4": [0]}}},
    {"id": "c02-bredon-constant-f4-k4", "criterion": 2, "kind": "probe",
     "params": {"name": "constant_field_sphere", "ring": "GF(2,x^2+x+1)", "k": 4},
     "expect": {"groups": {"0": [], "1": [], "2": [], "3": [], "4": [2, 2], "5": [2, 2], "6": [2, 2],
                           "7": [2, 2], "8": [2, 2], "9": [], "10": []}}},
    {"id": "c02-bredon-fixed-level-norm-source", "criterion": 2, "kind": "probe",
     "params": {"name": "norm_source_fixed_level"}, "expect": {"fixed": [2, 0]}},
    {"id": "c02-bredon-norm-cone-k0", "criterion": 2, "kind": "probe",
     "params": {"name": "norm_cone", "k": 0}, "expect": {"groups": {"0": [4], "1": [2]}}},
    {"id": "c02-bredon-norm-k0", "criterion": 2, "kind": "command",
     "params": {"command": "bredon", "mode": "norm", "level": 0}, "expect": {"groups": {"0": [4], "1": [2]}}},
    {"id": "c02-bredon-norm-k2", "criterion": 2, "kind": "command",
     "params": {"command": "bredon", "mode": "norm", "level": 2},
     "expect": {"groups": {"2": [2], "3": [2], "4": [4], "5": [2]}}},
    {"id": "c02-bredon-norm-k4", "criterion": 2, "kind": "command",
     "params": {"command": "bredon", "mode": "norm", "level": 4},
     "expect": {"groups": {"4": [2], "5": [2], "6": [2], "7": [2], "8": [4], "9": [2]}}},
    {"id": "c02-bredon-norm-k6", "criterion": 2, "kind": "command",
     "params": {"command": "bredon", "mode": "norm", "level": 6},
     "expect": {"groups": {"6": [2], "7": [2], "8": [2], "9": [2], "10": [2], "11": [2], "12": [4], "13": [2]}}},

    {"id": "c03-tower-base-kernel-f2", "criterion": 3, "kind": "probe",
     "params": {"name": "base_kernel", "ring": "Z/2", "max_degree": 6}, "expect": {"matches": true}},
    {"id": "c03-tower-base-kernel-f4", "criterion": 3, "kind": "probe",
     "params": {"name": "base_kernel", "ring": "GF(2,x^2+x+1)", "max_degree": 3}, "expect": {"matches": true}},
    {"id": "c03-tower-f2-l1-deg2", "criterion": 3, "kind": "command",
     "params": {"command": "trr", "mode": "tower", "ring": "Z/2", "level": 1, "window": "2:2"},
     "expect": {"groups": {"2": [2, 2, 2]}, "degrees": {"2": {"R_rank": 1, "F_rank": 2}}, "oracle_checked": true}},
    {"id": "c03-tower-f2-l4", "criterion": 3, "kind": "command",
     "params": {"command": "trr", "mode": "tower", "ring": "Z/2", "level": 4, "window": "0:6"},
     "expect": {"oracle_checked": true}},
    {"id": "c03-tower-f4-l3-sqrt", "criterion": 3, "kind": "probe",
     "params": {"name": "tower_sqrt", "ring": "GF(2,x^2+x+1)", "level": 3, "degree": 2},
     "expect": {"diagonal_is_sqrt": true, "off_diagonal_zero": true}},
    {"id": "c03-tower-f4-l4", "criterion": 3, "kind": "command",
     "params": {"command": "trr", "mode": "tower", "ring": "GF(2,x^2+x+1)", "level": 4, "window": "0:6"},
     "expect": {"oracle_checked": true}},

    {"id": "c04-limit-f2", "criterion": 4, "kind": "command",
     "params": {"command": "trr", "mode": "limit", "ring": "Z/2", "window": "0:8"},
     "expect": {"groups": {"0": [2], "1": [], "2": [2], "3": [], "4": [2], "5": [], "6": [2], "7": [], "8": [2]}}},
    {"id": "c04-limit-f4", "criterion": 4, "kind": "command",
     "params": {"command": "trr", "mode": "limit", "ring": "GF(2,x^2+x+1)", "window": "0:8"},
     "expect": {"frobenius_is_square": true,
                "groups": {"0": [2, 2], "1": [], "2": [2, 2], "3": [], "4": [2, 2], "5": [], "6": [2, 2], "7": [],
                           "8": [2, 2]}}},

    {"id": "c05-r-minus-f-f2-deg2", "criterion": 5, "kind": "probe",
     "params": {"name": "r_minus_f", "ring": "Z/2", "degree": 2}, "expect": {"kernel": [2], "cokernel": [2]}},
    {"id": "c05-tcr-f2", "criterion": 5, "kind": "command",
     "params": {"command": "tcr", "mode": "phi", "ring": "Z/2", "prime": 2, "window": "-2:8"},
     "expect": {"oracle_checked": true,
                "groups": {"-2": [], "-1": [2], "0": [2], "1": [2], "2": [2], "3": [2], "4": [2], "5": [2],
                           "6": [2], "7": [2], "8": [2]}}},
    {"id": "c05-tcr-f4", "criterion": 5, "kind": "command",
     "params": {"command": "tcr", "mode": "phi", "ring": "GF(2,x^2+x+1)", "prime": 2, "window": "-2:8"},
     "expect": {"oracle_checked": true,
                "groups": {"-2": [], "-1": [2], "0": [2], "1": [2], "2": [2], "3": [2], "4": [2], "5": [2],
                           "6": [2], "7": [2], "8": [2]}}},
    {"id": "c05-tcr-f8", "criterion": 5, "kind": "command",
     "params": {"command": "tcr", "mode": "phi", "ring": "GF(2,x^3+x+1)", "prime": 2, "window": "-2:8"},
     "expect": {"oracle_checked": true,
                "groups": {"-2": [], "-1": [2], "0": [2], "1": [2], "2": [2], "3": [2], "4": [2], "5": [2],
                           "6": [2], "7": [2], "8": [2]}}},
    {"id": "c05-tcr-perfect-algebra-f2", "criterion": 5, "kind": "probe",
     "params": {"name": "perfect_algebra", "ring": "Z/2", "window": "-1:8"},
     "expect": {"groups": {"-1": [2], "0": [2], "1": [2], "2": [2], "3": [2], "4": [2], "5": [2], "6": [2],
                           "7": [2], "8": [2]}}},

    {"id": "c06-pr-plus-pr2-kernel", "criterion": 6, "kind": "probe",
     "params": {"name": "pr_plus_pr2_kernel"}, "expect": {"kernel": [8]}},
    {"id": "c06-tcr-z", "criterion": 6, "kind": "command",
     "params": {"command": "tcr", "mode": "phi", "ring": "Z", "prime": 2, "window": "-2:9"},
     "expect": {"oracle_checked": true,
                "groups": {"-2": [], "-1": [2], "0": [8], "1": [2], "2": [], "3": [2], "4": [8], "5": [2],
                           "6": [], "7": [2], "8": [8], "9": [2]}}},
    {"id": "c06-z-oracle", "criterion": 6, "kind": "probe",
     "params": {"name": "z_oracle", "window": "-2:9"},
     "expect": {"groups": {"-2": [], "-1": [2], "0": [8], "1": [2], "2": [], "3": [2], "4": [8], "5": [2],
                           "6": [], "7": [2], "8": [8], "9": [2]}}},

    {"id": "c07-green-f2-n2", "criterion": 7, "kind": "command",
     "params": {"command": "green", "ring": "Z/2", "level": 2},
     "expect": {"underlying": [8], "fixed": [8], "tr": {"matrix": [[2]]}, "axiom_failures": [],
                "restriction_failures": []}},
    {"id": "c07-green-f4-galois-n1", "criterion": 7, "kind": "command",
     "params": {"command": "green", "ring": "GF(2,x^2+x+1) with galois", "level": 1},
     "expect": {"fixed": [4], "axiom_failures": [], "restriction_failures": []}},
    {"id": "c07-green-z4c2-refusal", "criterion": 7, "kind": "command",
     "params": {"command": "green", "ring": "Z/4[C2]", "level": 1}, "expect": {"refusal": "mu-iso"}},
    {"id": "c07-mu-f2", "criterion": 7, "kind": "command",
     "params": {"command": "mu", "ring": "Z/2"}, "expect": {"mu_iso": true}},
    {"id": "c07-mu-f4-galois", "criterion": 7, "kind": "command",
     "params": {"command": "mu", "ring": "GF(2,x^2+x+1) with galois"}, "expect": {"mu_iso": true}},
    {"id": "c07-mu-z4c2", "criterion": 7, "kind": "command",
     "params": {"command": "mu", "ring": "Z/4[C2]"}, "expect": {"mu_iso": false}},
    {"id": "c07-mu-z8", "criterion": 7, "kind": "command",
     "params": {"command": "mu", "ring": "Z/8"}, "expect": {"mu_iso": true}},
    {"id": "c07-mu-z9", "criterion": 7, "kind": "command",
     "params": {"command": "mu", "ring": "Z/9"}, "expect": {"mu_iso": true}},

    {"id": "c08-ml-f2", "criterion": 8, "kind": "command",
     "params": {"command": "green", "mode": "ml", "ring": "Z/2", "depth": 4},
     "expect": {"all": true, "iso": [true, true, true, true], "quotients": [[2], [2], [2], [2]]}},
    {"id": "c08-ml-f4-galois", "criterion": 8, "kind": "command",
     "params": {"command": "green", "mode": "ml", "ring": "GF(2,x^2+x+1) with galois", "depth": 3},
     "expect": {"all": true, "iso": [true, true, true], "quotients": [[], [], []]}},
    {"id": "c08-ml-z8", "criterion": 8, "kind": "command",
     "params": {"command": "green", "mode": "ml", "ring": "Z/8", "depth": 2}, "expect": {"all": false}},

    {"id": "c09-odd-f3-field", "criterion": 9, "kind": "command",
     "params": {"command": "tcr", "mode": "full", "ring": "Z/3", "prime": 3, "depth": 3},
     "expect": {"groups": {"-2": [], "-1": [27], "0": [27], "1": [], "2": []}}},
    {"id": "c09-odd-z9", "criterion": 9, "kind": "command",
     "params": {"command": "tcr", "mode": "phi", "ring": "Z/9", "prime": 3, "window": "-2:4"},
     "expect": {"vanishes": true, "pi0": [],
                "groups": {"-2": [], "-1": [], "0": [], "1": [], "2": [], "3": [], "4": []}}},

    {"id": "c10-bar-c2", "criterion": 10, "kind": "command",
     "params": {"command": "bar", "group": "C2"},
     "expect": {"components": [{"aut": [2], "orbit_size": 1}, {"aut": [2], "orbit_size": 1},
                               {"aut": [2], "orbit_size": 1}, {"aut": [2], "orbit_size": 1}],
                "psi": {"image": [0, 0, 3, 3], "well_defined": true, "aut_compatible": true},
                "tau": {"fixed_points": [0, 3], "free_pairs": [[1, 2]], "well_defined": true, "aut_compatible": true},
                "closed_form": {"ok": true}}},
    {"id": "c10-bar-c2-inversion", "criterion": 10, "kind": "command",
     "params": {"command": "bar", "group": "C2 with inv"},
     "expect": {"components": [{"aut": [2]}, {"aut": [2]}, {"aut": [2]}, {"aut": [2]}],
                "psi": {"image": [0, 0, 3, 3]}, "tau": {"fixed_points": [0, 3], "free_pairs": [[1, 2]]}}},
    {"id": "c10-bar-z", "criterion": 10, "kind": "command",
     "params": {"command": "bar", "group": "Z"},
     "expect": {"census": {"g_mod_2": "2", "two_torsion": false}, "closed_form": {"ok": true}}},
    {"id": "c10-bar-z-maps", "criterion": 10, "kind": "probe",
     "params": {"name": "free_abelian_maps", "bound": 6},
     "expect": {"psi_matches": true, "tau_matches": true, "psi_fixes_zero": true, "tau_fixed_are_even": true}}
  ]
})json";

std::vector<std::string> names_of(const std::map<std::string, std::function<Json(const Json&, const Budget&)>>& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

Window window_param(const Json& p) { return parse_window(p.at("window").get<std::string>()); }

FinRing ring_param(const Json& p) { return parse_ring(p.at("ring").get<std::string>()).ring(); }

Json homology_json(const ChainComplex& c, int lo, int hi) {
  GradedGroups g(lo, hi);
  for (int i = lo; i <= hi; ++i) g.set(i, homology(c, i));
  return Json{{"groups", graded_json(g)}};
}

// Enumerates every coordinate vector of a finite group.
template <class Fn>
void for_each_element(const FinAbGroup& g, Fn fn) {
  IntVector v(g.rank());
  while (true) {
    fn(v);
    std::size_t i = 0;
    for (; i < v.size(); ++i) {
      v[i] += 1;
      if (v[i] < g.invariants()[i]) break;
      v[i] = 0;
    }
    if (i == v.size()) return;
  }
}

Json probe_base_kernel(const Json& p, const Budget& budget) {
  PerfectChar2 k = perfect_char2(ring_param(p));
  const int maxd = p.at("max_degree").get<int>();
  const std::size_t e = k.dim();
  bool matches = true;
  for (int d = 0; d <= maxd; ++d) {
    FixedPointData fp = fixed_point_data(k, d);
    GroupHom rr = fp.r, srr = fp.sigma * fp.r;
    budget.require_enum(std::size_t{1} << (2 * fp.fixed.rank()), "base case kernel");
    for_each_element(fp.fixed, [&](const IntVector& x) {
      budget.check();
      IntVector rx = rr.apply(x);
      for_each_element(fp.fixed, [&](const IntVector& y) {
        IntVector diff = rx;
        IntVector sy = srr.apply(y);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= sy[i];
        bool in_kernel = fp.underlying.is_zero(diff);
        bool described = true;
        for (int n = 0; n <= d; ++n) {
          const int m = d - n;
          for (std::size_t j = 0; j < e; ++j) {
            const std::size_t c = static_cast<std::size_t>(n) * e + j;
            if (m < n) described = described && x[c] == 0 && y[c] == 0;
            if (m == n) described = described && x[c] == y[c];
          }
        }
        matches = matches && in_kernel == described;
      });
    });
  }
  return Json{{"matches", matches}};
}

Json probe_tower_sqrt(const Json& p, const Budget&) {
  FinRing ring = ring_param(p);
  PerfectChar2 k = perfect_char2(ring);
  const int d = p.at("degree").get<int>();
  if (d % 2 != 0) throw ParseError("tower_sqrt needs an even degree");
  TowerLevel t = trr_phi_tower(ring, p.at("level").get<unsigned>(), Window{d, d});
  const IntMatrix& r = t.R.at(d).matrix();
  const IntMatrix& s = k.sqrt.matrix();
  const std::size_t e = k.dim(), lo = static_cast<std::size_t>(d / 2) * e;
  bool diag = true, off = true;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      const bool in_block = i >= lo && i < lo + e && j >= lo && j < lo + e;
      const bool even = mpz_even_p(r(i, j).get_mpz_t()) != 0;
      if (in_block)
        diag = diag && even == (mpz_even_p(s(i - lo, j - lo).get_mpz_t()) != 0);
      else
        off = off && even;
    }
  return Json{{"diagonal_is_sqrt", diag}, {"off_diagonal_zero", off}};
}

Json probe_free_abelian_maps(const Json& p, const Budget&) {
  const int bound = p.at("bound").get<int>();
  FinAbGroup z{0};
  bool psi_ok = true, tau_ok = true, psi_zero = true, tau_even = true;
  for (int x = -bound; x <= bound; ++x)
    for (int y = -bound; y <= bound; ++y) {
      // ψ(x, y) = (x, w(y) x y), τ(x, y) = (y, x), written additively.
      AbelianLabel l = abelian_label(z, {x}, {y});
      psi_ok = psi_ok && abelian_label(z, {x}, {x + 2 * y}) == abelian_psi(z, l);
      AbelianLabel t = abelian_tau(z, l);
      tau_ok = tau_ok && abelian_label(z, {y}, {x}) == t;
      if (l.x[0] == 0) psi_zero = psi_zero && abelian_psi(z, l) == l;
      if (t == l) tau_even = tau_even && mpz_even_p(l.x[0].get_mpz_t()) != 0;
    }
  return Json{{"psi_matches", psi_ok}, {"tau_matches", tau_ok}, {"psi_fixes_zero", psi_zero}, {"tau_fixed_are_even", tau_even}};
}

const std::map<std::string, std::function<Json(const Json&, const Budget&)>>& probes() {
  static const std::map<std::string, std::function<Json(const Json&, const Budget&)>> table{
      {"base_kernel", probe_base_kernel},
      {"constant_field_sphere",
       [](const Json& p, const Budget&) {
         const int k = p.at("k").get<int>();
         GradedGroups h = rep_sphere_homotopy(constant_mackey(ring_param(p).additive_chart().group()), k);
         GradedGroups g(0, 2 * k + 2);
         for (int i = 0; i <= 2 * k + 2; ++i)
           if (i >= h.lo() && i <= h.hi()) g.set(i, h.at(i));
         return Json{{"groups", graded_json(g)}};
       }},
      {"constant_z_complex",
       [](const Json& p, const Budget&) {
         const int k = p.at("k").get<int>();
         return homology_json(rep_sphere_complex(constant_mackey(FinAbGroup{0}), k), k, 2 * k);
       }},
      {"free_abelian_maps", probe_free_abelian_maps},
      {"norm_cone",
       [](const Json& p, const Budget&) {
         const int k = p.at("k").get<int>();
         C2Mackey src = norm_source_mackey(), tgt = constant_mackey(FinAbGroup{0});
         return homology_json(mapping_cone(rep_sphere_map(norm_map(), src, tgt, k)), k, 2 * k + 1);
       }},
      {"norm_source_complex",
       [](const Json& p, const Budget&) {
         const int k = p.at("k").get<int>();
         return homology_json(rep_sphere_complex(norm_source_mackey(), k), k, 2 * k);
       }},
      {"norm_source_fixed_level",
       [](const Json&, const Budget&) { return Json{{"fixed", invariants_json(norm_source_mackey().fixed)}}; }},
      {"perfect_algebra",
       [](const Json& p, const Budget&) {
         return Json{{"groups", graded_json(tcr_phi_perfect_algebra(ring_param(p), window_param(p)))}};
       }},
      {"pr_plus_pr2_kernel",
       [](const Json&, const Budget&) {
         FinRing b = parse_ring("Z/8").ring(), b2 = parse_ring("Z/2").ring();
         AdditiveChart cb = b.additive_chart(), c2 = b2.additive_chart();
         // pr(y) + pr(y)^2 in B/2, with pr the reduction.
         GroupHom h = cb.hom_or_throw(c2, [&](Elem y) {
           Elem r = b2.from_int(Integer(static_cast<unsigned long>(y)));
           return b2.add(r, b2.mul(r, r));
         });
         return Json{{"kernel", invariants_json(kernel(h).group)}};
       }},
      {"r_minus_f",
       [](const Json& p, const Budget&) {
         PerfectChar2 k = perfect_char2(ring_param(p));
         const int d = p.at("degree").get<int>();
         FixedPointData fp = fixed_point_data(k, d);
         auto kc = graded_kernel_of_difference(GradedHom{{d, fp.r}}, GradedHom{{d, fp.f}});
         return Json{{"kernel", invariants_json(kc.at(d).kernel.group)},
                     {"cokernel", invariants_json(kc.at(d).cokernel.group)}};
       }},
      {"tower_sqrt", probe_tower_sqrt},
      {"z_oracle",
       [](const Json& p, const Budget&) { return Json{{"groups", graded_json(tcr_phi_Z_oracle(window_param(p)))}}; }},
  };
  return table;
}

}  // namespace

const std::string& default_fixture_text() {
  static const std::string text = kSuite;
  return text;
}

std::vector<Fixture> parse_fixtures(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fixture file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("fixtures") || !doc["fixtures"].is_array())
    throw ParseError("fixture file must be an object with a 'fixtures' array");
  std::vector<Fixture> out;
  std::map<std::string, bool> seen;
  for (const Json& j : doc["fixtures"]) {
    Fixture f;
    try {
      f.id = j.at("id").get<std::string>();
      f.criterion = j.at("criterion").get<int>();
      f.kind = j.at("kind").get<std::string>();
      f.params = j.at("params");
      f.expect = j.at("expect");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed fixture record: ") + e.what());
    }
    if (f.kind != "command" && f.kind != "probe") throw ParseError("fixture " + f.id + ": unknown kind '" + f.kind + "'");
    if (f.kind == "command") Request::from_json(f.params);
    if (f.kind == "probe" && !probes().count(f.params.value("name", "")))
      throw ParseError("fixture " + f.id + ": unknown probe");
    if (seen[f.id]) throw ParseError("duplicate fixture id " + f.id);
    seen[f.id] = true;
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.id < b.id; });
  return out;
}

std::vector<Fixture> default_fixtures() { return parse_fixtures(default_fixture_text()); }

std::vector<std::string> probe_names() { return names_of(probes()); }

std::string json_mismatch(const Json& expect, const Json& actual, const std::string& path) {
  if (expect.is_object()) {
    if (!actual.is_object()) return path.empty() ? "/" : path;
    for (const auto& [k, v] : expect.items()) {
      if (!actual.contains(k)) return path + "/" + k;
      std::string m = json_mismatch(v, actual[k], path + "/" + k);
      if (!m.empty()) return m;
    }
    return "";
  }
  if (expect.is_array()) {
    if (!actual.is_array() || actual.size() != expect.size()) return path.empty() ? "/" : path;
    for (std::size_t i = 0; i < expect.size(); ++i) {
      std::string m = json_mismatch(expect[i], actual[i], path + "/" + std::to_string(i));
      if (!m.empty()) return m;
    }
    return "";
  }
  return expect == actual ? "" : (path.empty() ? "/" : path);
}

FixtureOutcome run_fixture(const Fixture& f, const Budget& budget) {
  FixtureOutcome out;
  out.id = f.id;
  out.criterion = f.criterion;
  auto start = std::chrono::steady_clock::now();
  try {
    if (f.kind == "command")
      out.actual = run_request(Request::from_json(f.params), budget);
    else
      out.actual = probes().at(f.params.at("name").get<std::string>())(f.params, budget);
  } catch (const Refusal& r) {
    out.actual = Json{{"refusal", r.hypothesis()}, {"detail", r.what()}};
  } catch (const Cancelled&) {
    throw;
  } catch (const std::exception& e) {
    out.actual = Json{{"error", e.what()}};
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string m = json_mismatch(f.expect, out.actual);
  out.pass = m.empty();
  if (!out.pass) {
    out.detail = "mismatch at " + m;
    if (out.actual.contains("error")) out.detail += ": " + out.actual["error"].get<std::string>();
    if (out.actual.contains("refusal")) out.detail += ": " + out.actual["detail"].get<std::string>();
  }
  return out;
}

}  // namespace tcrcalc
