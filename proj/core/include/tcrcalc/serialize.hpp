#pragma once

#include "tcrcalc/abelian.hpp"
#include "tcrcalc/graded.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace tcrcalc {

using Json = nlohmann::json;

// Invariant factors as a JSON array; factors beyond 64 bits are written as strings.
Json invariants_json(const FinAbGroup& g);
Json group_json(const FinAbGroup& g);  // {"invariants": [...]}
Json hom_json(const GroupHom& h);
// Degree -> invariants over the whole window, trivial groups included as [].
Json graded_json(const GradedGroups& g);

// Result record shared by the graded computations.
Json result_json(const std::string& input, const std::string& theorem, const GradedGroups& g, bool oracle_checked);

// Z/2⊕Z/4⊕Z style, "0" for the trivial group.
std::string group_text(const FinAbGroup& g);

// Sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace tcrcalc
