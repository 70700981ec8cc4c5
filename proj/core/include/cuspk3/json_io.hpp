// Text formats for graphs and cycles (see FORMATS.md).  The JSON library is
// an implementation detail; callers only see strings.
#pragma once

#include <map>
#include <string>

#include "cuspk3/resgraph.hpp"

namespace cuspk3 {

// {"vertices":[{"id","self_int","genus","deg"}],"edges":[{"a","b","w"}]}
// self_int defaults to -2, genus to 0, deg and w to 1.
ResGraph graph_from_json(const std::string& text);
// Compact when indent < 0.  Keys in fixed order, edges sorted by vertex index.
std::string graph_to_json(const ResGraph& g, int indent = -1);

// {"E1": 2, "E2": 1}
std::map<std::string, long long> cycle_from_json(const std::string& text);
std::string cycle_to_json(const std::map<std::string, long long>& c);

std::string read_text_file(const std::string& path);
ResGraph load_graph(const std::string& path);

// Contents of a data file compiled into the library (see core/data).
// Throws DomainError for an unknown name.
std::string bundled_data(const std::string& name);

}  // namespace cuspk3
