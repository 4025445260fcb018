#include "tcrcalc/serialize.hpp"

namespace tcrcalc {

namespace {

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

}  // namespace

Json invariants_json(const FinAbGroup& g) {
  Json a = Json::array();
  for (const Integer& d : g.invariants()) a.push_back(integer_json(d));
  return a;
}

Json group_json(const FinAbGroup& g) { return Json{{"invariants", invariants_json(g)}}; }

Json hom_json(const GroupHom& h) {
  Json rows = Json::array();
  const IntMatrix& m = h.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    rows.push_back(row);
  }
  return Json{{"source", invariants_json(h.source())}, {"target", invariants_json(h.target())}, {"matrix", rows}};
}

Json graded_json(const GradedGroups& g) {
  Json out = Json::object();
  for (int d = g.lo(); d <= g.hi(); ++d) out[std::to_string(d)] = invariants_json(g.at(d));
  return out;
}

Json result_json(const std::string& input, const std::string& theorem, const GradedGroups& g, bool oracle_checked) {
  Json periodicity = Json::object();
  if (g.periodicity) periodicity = Json{{"period", g.periodicity->period}, {"pattern", g.periodicity->description}};
  return Json{{"input", input},
              {"theorem", theorem},
              {"window", Json::array({g.lo(), g.hi()})},
              {"groups", graded_json(g)},
              {"periodicity", periodicity},
              {"oracle_checked", oracle_checked}};
}

std::string group_text(const FinAbGroup& g) {
  if (g.is_trivial()) return "0";
  std::string out;
  for (const Integer& d : g.invariants()) {
    if (!out.empty()) out += "⊕";
    out += sgn(d) == 0 ? "ℤ" : "ℤ/" + d.get_str();
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace tcrcalc
