#include "tcrcalc/commands.hpp"

#include "tcrcalc/barcalc.hpp"
#include "tcrcalc/errors.hpp"
#include "tcrcalc/mackey.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

namespace tcrcalc {

namespace {

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError("bad " + what + ": '" + std::string(s) + "'");
  return v;
}

Window window_or(const Request& r, int lo, int hi) {
  Window w = r.window.value_or(Window{lo, hi});
  if (w.hi < w.lo || w.hi - w.lo > 64) throw ParseError("window must satisfy lo <= hi and span at most 64 degrees");
  return w;
}

unsigned depth_or(const Request& r, unsigned fallback) {
  unsigned d = r.depth.value_or(fallback);
  if (d > 12) throw ParseError("depth is capped at 12");
  return d;
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string("missing ") + flag);
}

InvRing finite_ring(const Request& r) {
  require(r.ring, "--ring");
  return parse_ring(r.ring);
}

Json string_list(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

// ------------------------------------------------------------------ witt

Json run_witt(const Request& r, const Budget& budget) {
  InvRing a = finite_ring(r);
  unsigned p = r.prime.value_or(witt_prime(a.ring()));
  if (r.level < 1) throw ParseError("Witt length must be at least 1");
  WittStructure w = witt_structure(a.ring(), p, r.level, budget);
  Json out{{"input", a.ring().spec()}, {"prime", p}, {"length", r.level}, {"group", group_json(w.group())}};
  if (r.level >= 2) {
    WittStructure lower = witt_structure(a.ring(), p, r.level - 1, budget);
    out["restriction"] = hom_json(witt_restriction_hom(w, lower));
    out["frobenius"] = hom_json(witt_frobenius_hom(w, lower));
    out["verschiebung"] = hom_json(witt_verschiebung_hom(lower, w));
  }
  return out;
}

// ------------------------------------------------------------------ bredon

Json run_bredon(const Request& r) {
  const int k = static_cast<int>(r.level);
  if (k % 2 != 0) throw ParseError("representation sphere weight must be even");
  std::string mode = r.mode.empty() ? "constant" : r.mode;
  if (mode == "norm") {
    GradedGroups g = norm_cofiber_homotopy(k);
    return result_json("norm cofiber, weight " + std::to_string(k), "bredon-norm-cofiber", g, false);
  }
  if (mode != "constant") throw ParseError("bredon mode must be constant or norm");
  std::string ring = r.ring.empty() ? "Z" : r.ring;
  FinAbGroup g;
  if (parse_ring_spec(ring).is_pro()) {
    if (ring != "Z") throw ParseError("only Z is accepted as an infinite coefficient ring");
    g = FinAbGroup{0};
  } else {
    g = parse_ring(ring).ring().additive_chart().group();
  }
  GradedGroups h = rep_sphere_homotopy(constant_mackey(g), k);
  return result_json("constant " + ring + ", weight " + std::to_string(k), "bredon-constant", h, false);
}

// ------------------------------------------------------------------ tcr

Json run_tcr_phi(const Request& r, const Budget& budget) {
  require(r.ring, "--ring");
  const unsigned p = r.prime.value_or(2);
  RingSpec spec = parse_ring_spec(r.ring);
  Window w = window_or(r, -2, 8);
  if (p != 2) {
    if (spec.is_pro()) throw Refusal("finite-ring", "odd primes are computed for finite rings only");
    InvRing a = instantiate(spec);
    OddResult o = tcr_phi_odd(a, p, budget);
    Json out{{"input", a.spec()},
             {"theorem", "tcr-phi-odd"},
             {"prime", p},
             {"pi0", invariants_json(o.pi0)},
             {"quotient", invariants_json(o.quotient)},
             {"transfer_surjective", o.transfer_surjective},
             {"vanishes", o.vanishes},
             {"action_additive", o.action_additive},
             {"oracle_checked", false}};
    if (o.vanishes) out["groups"] = graded_json(GradedGroups(w.lo, w.hi));
    return out;
  }
  if (spec.is_pro()) {
    ProRing b(spec);
    TorsionFreeResult t = tcr_phi_torsionfree(b, w, depth_or(r, 8), budget);
    bool checked = false;
    if (spec.render() == "Z") {
      if (!(tcr_phi_Z_oracle(w) == t.groups)) throw AlgebraError("torsion-free formula and chain-level oracle disagree for Z");
      checked = true;
    }
    Json out = result_json(spec.render(), "tcr-phi-torsion-free", t.groups, checked);
    out["level"] = t.level;
    return out;
  }
  InvRing a = instantiate(spec);
  if (is_field(a.ring())) {
    GradedGroups g = tcr_phi_char2_field(a.ring(), w);
    if (!(tcr_phi_perfect_algebra(a.ring(), w) == g))
      throw AlgebraError("r - f kernels and the 1 + sq formula disagree for " + a.spec());
    return result_json(a.spec(), "tcr-phi-perfect-field", g, true);
  }
  return result_json(a.spec(), "tcr-phi-perfect-algebra", tcr_phi_perfect_algebra(a.ring(), w), false);
}

Json run_tcr_full(const Request& r, const Budget& budget) {
  InvRing a = finite_ring(r);
  const unsigned p = r.prime.value_or(witt_prime(a.ring()));
  if (p == 2) throw Refusal("odd-prime", "the full computation is implemented for odd primes; use 'tcr phi' at p = 2");
  if (!is_field(a.ring())) throw Refusal("perfect-field", a.spec() + " is not a field");
  OddFieldResult o = tcr_odd_perfect_field(a.ring(), p, depth_or(r, 3), budget);
  Json out = result_json(a.spec(), "tcr-odd-perfect-field", o.groups, false);
  out["level"] = o.level;
  Json pi0 = Json::array(), pim1 = Json::array();
  for (const auto& g : o.pi0_levels) pi0.push_back(invariants_json(g));
  for (const auto& g : o.pim1_levels) pim1.push_back(invariants_json(g));
  out["pi0_levels"] = pi0;
  out["pim1_levels"] = pim1;
  return out;
}

// ------------------------------------------------------------------ trr

Json run_trr(const Request& r, const Budget& budget) {
  InvRing a = finite_ring(r);
  std::string mode = r.mode.empty() ? "tower" : r.mode;
  if (mode == "limit") {
    Window w = window_or(r, 0, 8);
    TowerLimit t = trr_phi_limit(a.ring(), w, depth_or(r, 5), budget);
    Json out = result_json(a.spec(), "trr-phi-limit", t.groups, true);
    Json frob = Json::object();
    for (const auto& [d, h] : t.frobenius) frob[std::to_string(d)] = hom_json(h);
    out["frobenius"] = frob;
    out["frobenius_is_square"] = t.frobenius_is_square;
    out["depth"] = t.depth;
    return out;
  }
  if (mode != "tower") throw ParseError("trr mode must be tower or limit");
  Window w = window_or(r, 0, 6);
  if (r.level < 1) throw ParseError("tower level must be at least 1");
  TowerLevel t = trr_phi_tower(a.ring(), r.level, w);
  PerfectChar2 pk = perfect_char2(a.ring());
  const int maxd = std::max(w.hi, 0);
  TowerComparison cmp = compare_towers(oracle_tower(pk, r.level + 1, maxd, budget), closed_form_tower(pk, r.level + 1, maxd));
  if (!cmp.ok) throw AlgebraError("closed-form tower disagrees with the oracle: " + cmp.failures.front());
  GradedGroups g(w.lo, w.hi);
  Json degrees = Json::object();
  for (const auto& [d, grp] : t.groups) {
    g.set(d, grp);
    Json labels = Json::array();
    for (const SummandLabel& l : t.labels.at(d)) labels.push_back(Json::array({l.n, l.m}));
    degrees[std::to_string(d)] = Json{{"labels", labels},
                                      {"R", hom_json(t.R.at(d))},
                                      {"F", hom_json(t.F.at(d))},
                                      {"sigma", hom_json(t.sigma.at(d))},
                                      {"R_rank", image(t.R.at(d)).group.rank()},
                                      {"F_rank", image(t.F.at(d)).group.rank()}};
  }
  Json out = result_json(a.spec(), "trr-phi-tower", g, true);
  out["level"] = r.level;
  out["degrees"] = degrees;
  return out;
}

// ------------------------------------------------------------------ mu, green

Json run_mu(const Request& r, const Budget& budget) {
  InvRing a = finite_ring(r);
  MuReport m = mu_is_iso(a, budget);
  if (m.iso) return Json{{"mu_iso", true}};
  return Json{{"mu_iso", false}, {"kernel", invariants_json(m.kernel)}, {"witness", m.witness}};
}

Json run_green(const Request& r, const Budget& budget) {
  InvRing a = finite_ring(r);
  std::string mode = r.mode.empty() ? "levels" : r.mode;
  if (mode == "ml") {
    MLReport m = ml_check(a, depth_or(r, 3), budget);
    Json iso = Json::array(), q = Json::array();
    for (bool b : m.iso) iso.push_back(b);
    for (const auto& g : m.quotients) q.push_back(invariants_json(g));
    Json out{{"input", a.spec()}, {"iso", iso}, {"quotients", q}, {"all", m.all}};
    if (m.all) out["conclusion"] = "pi_0 TRR(A;2)^{Z/2} = W(A^{Z/2};2)";
    return out;
  }
  if (mode != "levels") throw ParseError("green mode must be levels or ml");
  GreenFunctorData g = pi0_trr_green(a, r.level, budget);
  Json out{{"input", a.spec()},
           {"level", r.level},
           {"underlying", invariants_json(g.underlying.group())},
           {"fixed", invariants_json(g.fixed.group())},
           {"res", hom_json(g.res_hom)},
           {"tr", hom_json(g.tr_hom)},
           {"axiom_failures", string_list(green_axiom_failures(g))}};
  if (r.level >= 1) {
    GreenFunctorData lower = pi0_trr_green(a, r.level - 1, budget);
    out["restriction_failures"] = string_list(green_restriction_failures(g, lower));
  }
  return out;
}

// ------------------------------------------------------------------ bar

Json component_map_json(const ComponentMap& m) {
  Json pairs = Json::array();
  for (auto [a, b] : m.free_pairs) pairs.push_back(Json::array({a, b}));
  return Json{{"image", m.image},
              {"well_defined", m.well_defined},
              {"aut_compatible", m.aut_compatible},
              {"fixed_points", m.fixed_points},
              {"free_pairs", pairs}};
}

Json census_json(const AbelianCensus& c) {
  Json out{{"group", invariants_json(c.group)},
           {"two_torsion", c.two_torsion},
           {"g_mod_2", c.g_mod_2.get_str()},
           {"type_one", c.type_one},
           {"type_two", c.type_two}};
  if (c.tau_fixed) out["tau_fixed"] = c.tau_fixed->get_str();
  if (c.free_orbits) out["free_orbits"] = c.free_orbits->get_str();
  return out;
}

Json run_bar(const Request& r, const Budget& budget) {
  require(r.group, "--group");
  BarInput in = parse_bar_group(r.group);
  Json out{{"input", in.spec}};
  if (in.abelian) out["census"] = census_json(abelian_report(*in.abelian));
  if (!in.finite) {
    const std::size_t rank = in.abelian->free_rank();
    if (rank == in.abelian->rank() && rank <= 2) {
      ClosedFormCheck c = check_free_abelian_window(rank, rank == 1 ? 8 : 2);
      out["closed_form"] = Json{{"ok", c.ok}, {"failures", string_list(c.failures)}, {"method", "orbit enumeration on a box"}};
    }
    return out;
  }
  ComponentDecomposition d = components(*in.finite, budget);
  const FiniteGroup& g = d.g.group;
  Json comps = Json::array();
  for (const Component& c : d.components) {
    Json j{{"x", g.names[c.x]}, {"y", g.names[c.y]}, {"orbit_size", c.orbit_size}, {"aut_order", c.aut.size()}};
    if (c.aut_group) j["aut"] = invariants_json(*c.aut_group);
    comps.push_back(j);
  }
  out["involution"] = d.g.involution;
  out["components"] = comps;
  out["psi"] = component_map_json(psi_on_components(d));
  out["tau"] = component_map_json(tau_on_components(d));
  if (in.abelian) {
    ClosedFormCheck c = check_abelian_closed_form(d);
    out["closed_form"] = Json{{"ok", c.ok}, {"failures", string_list(c.failures)}, {"method", "exhaustive"}};
  }
  return out;
}

// ------------------------------------------------------------------ text

std::string invariants_text(const Json& inv) {
  if (inv.empty()) return "0";
  std::string s;
  for (const Json& d : inv) {
    if (!s.empty()) s += "⊕";
    std::string v = d.is_string() ? d.get<std::string>() : std::to_string(d.get<long long>());
    s += v == "0" ? "ℤ" : "ℤ/" + v;
  }
  return s;
}

bool is_invariant_list(const Json& j) {
  if (!j.is_array()) return false;
  for (const Json& e : j)
    if (!e.is_number_integer() && !e.is_string()) return false;
  return true;
}

}  // namespace

bool is_field(const FinRing& k) {
  if (k.size() < 2) return false;
  for (Elem a = 0; a < k.size(); ++a) {
    if (a == k.zero()) continue;
    bool unit = false;
    for (Elem b = 0; b < k.size() && !unit; ++b) unit = k.mul(a, b) == k.one();
    if (!unit) return false;
  }
  return true;
}

Window parse_window(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("window must look like lo:hi");
  Window w{parse_int(text.substr(0, colon), "window"), parse_int(text.substr(colon + 1), "window")};
  if (w.hi < w.lo || w.hi - w.lo > 64) throw ParseError("window must satisfy lo <= hi and span at most 64 degrees");
  return w;
}

Request Request::from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("request must be a JSON object");
  Request r;
  try {
    r.command = j.at("command").get<std::string>();
    r.mode = j.value("mode", "");
    r.ring = j.value("ring", "");
    r.group = j.value("group", "");
    if (j.contains("prime")) r.prime = j.at("prime").get<unsigned>();
    r.level = j.value("level", 1u);
    if (j.contains("window")) r.window = parse_window(j.at("window").get<std::string>());
    if (j.contains("depth")) r.depth = j.at("depth").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad request: ") + e.what());
  }
  static const std::set<std::string> known{"witt", "bredon", "tcr", "trr", "mu", "green", "bar"};
  if (!known.count(r.command)) throw ParseError("unknown command '" + r.command + "'");
  return r;
}

Json Request::to_json() const {
  Json j{{"command", command}, {"level", level}};
  if (!mode.empty()) j["mode"] = mode;
  if (!ring.empty()) j["ring"] = ring;
  if (!group.empty()) j["group"] = group;
  if (prime) j["prime"] = *prime;
  if (window) j["window"] = std::to_string(window->lo) + ":" + std::to_string(window->hi);
  if (depth) j["depth"] = *depth;
  return j;
}

Json run_request(const Request& r, const Budget& budget) {
  if (r.command == "witt") return run_witt(r, budget);
  if (r.command == "bredon") return run_bredon(r);
  if (r.command == "tcr") {
    if (r.mode.empty() || r.mode == "phi") return run_tcr_phi(r, budget);
    if (r.mode == "full") return run_tcr_full(r, budget);
    throw ParseError("tcr mode must be phi or full");
  }
  if (r.command == "trr") return run_trr(r, budget);
  if (r.command == "mu") return run_mu(r, budget);
  if (r.command == "green") return run_green(r, budget);
  if (r.command == "bar") return run_bar(r, budget);
  throw ParseError("unknown command '" + r.command + "'");
}

std::string render_text(const Json& result) {
  std::ostringstream out;
  if (result.contains("input")) out << "input: " << result["input"].get<std::string>() << "\n";
  if (result.contains("theorem")) out << "theorem: " << result["theorem"].get<std::string>() << "\n";
  if (result.contains("groups")) {
    // Keys are strings; print in numeric order.
    std::map<int, std::string> rows;
    for (const auto& [deg, inv] : result["groups"].items()) rows[std::stoi(deg)] = invariants_text(inv);
    for (const auto& [d, s] : rows) out << "  π_" << d << " = " << s << "\n";
  }
  for (const auto& [key, value] : result.items()) {
    if (key == "input" || key == "theorem" || key == "groups") continue;
    if (is_invariant_list(value) && (key == "pi0" || key == "quotient" || key == "underlying" || key == "fixed" ||
                                     key == "kernel"))
      out << key << ": " << invariants_text(value) << "\n";
    else if (value.is_object() && value.contains("invariants"))
      out << key << ": " << invariants_text(value["invariants"]) << "\n";
    else if (value.is_primitive())
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    else
      out << key << ": " << value.dump() << "\n";
  }
  return out.str();
}

}  // namespace tcrcalc
