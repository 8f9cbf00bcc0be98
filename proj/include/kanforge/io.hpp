#pragma once

#include <string>

#include <json.hpp>

#include "kanforge/diagram.hpp"
#include "kanforge/fincat.hpp"
#include "kanforge/pmc.hpp"

namespace kanforge {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Parse failures and missing files raise InputError naming the path.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

// {"objects", "morphisms": [{name, dom, cod}], "identities", "compose"}
Json category_to_json(const FinCategory& c);
FinCategory category_from_json(const Json& j);

// Category fields plus "weq", "cof", "fib" (morphism names) and
// "factor": {w: {"c", "f", "mid": {"w2|u|v": m}}}.
Json relcat_to_json(const RelStructure& r);
RelStructure relcat_from_json(const Json& j);

// {"shape": [element names], "objects": {element: object},
//  "arrows": [[x, y, morphism]]} with every strict pair x < y.
Json diagram_to_json(const Diagram& d);
// Elements are matched to shape by name. Arrows may be given on covering
// pairs only; the rest are composed.
Diagram diagram_from_json(const Json& j, const PosetPtr& shape, const CategoryPtr& target);

Json functor_to_json(const Functor& f);

}  // namespace kanforge
