#include "cuspk3/json_io.hpp"

#include <string_view>
#include <vector>
#include <fstream>
#include <set>
#include <sstream>

#include "cuspk3/error.hpp"
#include "json.hpp"

namespace cuspk3 {

namespace detail {
struct BundledFile {
  std::string_view name, text;
};
// Generated from core/data at configure time.
const std::vector<BundledFile>& bundled_files();
}  // namespace detail

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ParseError("unknown key '" + k + "' in " + where);
}

long long get_int(const json& obj, const std::string& key, long long dflt, const std::string& where) {
  if (!obj.contains(key)) return dflt;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + " must be an integer");
  return v.get<long long>();
}

}  // namespace

ResGraph graph_from_json(const std::string& text) {
  json j = parse_json(text);
  only_keys(j, {"vertices", "edges"}, "graph");
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw ParseError("graph.vertices must be an array");
  ResGraph g;
  for (const auto& v : j["vertices"]) {
    only_keys(v, {"id", "self_int", "genus", "deg"}, "vertex");
    if (!v.contains("id") || !v["id"].is_string()) throw ParseError("vertex.id must be a string");
    try {
      g.add_vertex(v["id"].get<std::string>(), static_cast<int>(get_int(v, "self_int", -2, "vertex")),
                   static_cast<int>(get_int(v, "genus", 0, "vertex")), static_cast<int>(get_int(v, "deg", 1, "vertex")));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("graph.edges must be an array");
    for (const auto& e : j["edges"]) {
      only_keys(e, {"a", "b", "w"}, "edge");
      if (!e.contains("a") || !e.contains("b") || !e["a"].is_string() || !e["b"].is_string())
        throw ParseError("edge.a and edge.b must be vertex ids");
      try {
        int a = g.require(e["a"].get<std::string>()), b = g.require(e["b"].get<std::string>());
        if (g.pairing(a, b) != 0) throw ParseError("duplicate edge " + g.vertex(a).id + "-" + g.vertex(b).id);
        g.set_edge(a, b, get_int(e, "w", 1, "edge"));
      } catch (const DomainError& err) {
        throw ParseError(err.what());
      }
    }
  }
  return g;
}

std::string graph_to_json(const ResGraph& g, int indent) {
  ordered_json j;
  j["vertices"] = ordered_json::array();
  for (const auto& v : g.vertices())
    j["vertices"].push_back(ordered_json{{"id", v.id}, {"self_int", v.self_int}, {"genus", v.genus}, {"deg", v.deg}});
  j["edges"] = ordered_json::array();
  for (int a = 0; a < g.size(); ++a)
    for (int b = a + 1; b < g.size(); ++b)
      if (g.pairing(a, b) != 0)
        j["edges"].push_back(ordered_json{{"a", g.vertex(a).id}, {"b", g.vertex(b).id}, {"w", g.pairing(a, b)}});
  return j.dump(indent);
}

std::map<std::string, long long> cycle_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ParseError("cycle must be an object of id -> integer");
  std::map<std::string, long long> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number_integer()) throw ParseError("cycle coefficient of " + k + " must be an integer");
    out[k] = v.get<long long>();
  }
  return out;
}

std::string cycle_to_json(const std::map<std::string, long long>& c) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : c) j[k] = v;
  return j.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ResGraph load_graph(const std::string& path) { return graph_from_json(read_text_file(path)); }

std::string bundled_data(const std::string& name) {
  for (const auto& f : detail::bundled_files())
    if (f.name == name) return std::string(f.text);
  throw DomainError("no bundled data file " + name);
}

}  // namespace cuspk3
