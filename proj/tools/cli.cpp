#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "cuspk3/doublecover.hpp"
#include "cuspk3/error.hpp"
#include "cuspk3/json_io.hpp"
#include "cuspk3/kummer.hpp"
#include "cuspk3/liealg.hpp"
#include "cuspk3/quotient.hpp"
#include "cuspk3/resgraph.hpp"
#include "json.hpp"

namespace cuspk3::cli {

using nlohmann::ordered_json;

namespace {

std::string hex(unsigned v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", v);
  return buf;
}

std::string hex(FieldElem x, int level) { return hex(x.mask(level)); }

ordered_json cycle_json(const ResGraph& g, const Cycle& z) {
  ordered_json j = ordered_json::object();
  for (int i = 0; i < g.size(); ++i)
    if (z[i] != 0) j[g.vertex(i).id] = z[i];
  return j;
}

ordered_json graph_json(const ResGraph& g) { return ordered_json::parse(graph_to_json(g)); }

// "2E5+E6" or a JSON object {"E5":2,"E6":1}.
std::map<std::string, long long> parse_cycle_text(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw ParseError("empty cycle");
  if (t.front() == '{') return cycle_from_json(t);
  std::map<std::string, long long> out;
  std::stringstream ss(t);
  std::string term;
  while (std::getline(ss, term, '+')) {
    std::size_t i = 0;
    while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) ++i;
    if (i == term.size()) throw ParseError("cycle term '" + term + "' has no curve id");
    long long c = i == 0 ? 1 : std::stoll(term.substr(0, i));
    out[term.substr(i)] += c;
  }
  return out;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string id;
  while (std::getline(ss, id, ','))
    if (!id.empty()) out.push_back(id);
  return out;
}

MPoly truncate(const MPoly& f, int n) {
  MPoly out;
  for (const auto& [e, c] : f.terms()) {
    int d = 0;
    std::map<std::string, int> powers;
    for (std::size_t i = 0; i < e.size(); ++i) {
      d += e[i];
      powers[f.vars()[i]] = e[i];
    }
    if (d <= n) out += MPoly::monomial(c, powers);
  }
  return out;
}

// Collects named assertions; the record is failing as soon as one fails.
class Checks {
 public:
  void add(const std::string& name, bool ok, const std::string& detail = "") {
    checks_.push_back(ordered_json{{"check", name}, {"ok", ok}});
    if (!ok) {
      ordered_json f{{"check", name}};
      if (!detail.empty()) f["detail"] = detail;
      failures_.push_back(f);
    }
  }
  bool ok() const { return failures_.empty(); }
  void write(ordered_json& rec, bool list_all) const {
    if (list_all) rec["checks"] = checks_;
    rec["failures"] = failures_.empty() ? ordered_json::array() : failures_;
  }

 private:
  ordered_json checks_ = ordered_json::array();
  ordered_json failures_ = ordered_json::array();
};

// ---------------------------------------------------------------------------
// Human-readable rendering of a JSON record.

std::string scalar(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool flat_object(const ordered_json& v) {
  if (!v.is_object()) return false;
  for (const auto& [k, x] : v.items())
    if (x.is_structured() && !(x.is_array() && std::none_of(x.begin(), x.end(), [](const ordered_json& y) {
                                 return y.is_structured();
                               })))
      return false;
  return true;
}

std::string cell(const ordered_json& v) {
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : " ") + scalar(x);
    return out;
  }
  if (v.is_null()) return "-";
  return scalar(v);
}

void render(const ordered_json& j, std::ostream& out, const std::string& indent) {
  std::size_t width = 0;
  for (const auto& [k, v] : j.items())
    if (!v.is_structured()) width = std::max(width, k.size());
  for (const auto& [k, v] : j.items()) {
    if (!v.is_structured()) {
      out << indent << std::left << std::setw(static_cast<int>(width)) << k << "  " << scalar(v) << "\n";
    } else if (v.is_array() && std::none_of(v.begin(), v.end(), [](const ordered_json& x) { return x.is_structured(); })) {
      out << indent << k << ": " << cell(v) << "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), flat_object)) {
      out << indent << k << ":\n";
      std::vector<std::string> cols;
      for (const auto& row : v)
        for (const auto& [c, x] : row.items())
          if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
      std::vector<std::size_t> w(cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c) {
        w[c] = cols[c].size();
        for (const auto& row : v) w[c] = std::max(w[c], row.contains(cols[c]) ? cell(row[cols[c]]).size() : 1);
      }
      out << indent << "  ";
      for (std::size_t c = 0; c < cols.size(); ++c) out << std::left << std::setw(static_cast<int>(w[c]) + 2) << cols[c];
      out << "\n";
      for (const auto& row : v) {
        out << indent << "  ";
        for (std::size_t c = 0; c < cols.size(); ++c)
          out << std::left << std::setw(static_cast<int>(w[c]) + 2)
              << (row.contains(cols[c]) ? cell(row[cols[c]]) : std::string("-"));
        out << "\n";
      }
    } else if (v.is_array()) {
      out << indent << k << ":\n";
      int i = 0;
      for (const auto& x : v) {
        if (x.is_object()) {
          out << indent << "  [" << i++ << "]\n";
          render(x, out, indent + "    ");
        } else {
          out << indent << "  " << cell(x) << "\n";
        }
      }
    } else {
      out << indent << k << ":\n";
      render(v, out, indent + "  ");
    }
  }
}

// ---------------------------------------------------------------------------
// Subcommands

struct Options {
  std::string format = "json";
  std::string field = "f4";
  std::string r = "1", s = "1";
  std::string at = "quad";
  std::string a = "0", b = "0";
  std::string equation;
  std::string expect;
  int max_depth = 6;
  int projection = 2;
  std::string graph, curve, support;
  std::string table = "d8";
  std::string file;
  unsigned threads = 0;
  std::string g;
  int degree = 8;
};

struct Outcome {
  ordered_json record;
  bool ok = true;
};

int level_of(const Options& o) { return parse_level(o.field); }

SurfaceParams params_of(const Options& o) {
  int k = level_of(o);
  return make_params(k, parse_field_elem(o.r, k), parse_field_elem(o.s, k));
}

void put_params(ordered_json& rec, const SurfaceParams& p) {
  rec["field"] = level_name(p.level);
  rec["r"] = hex(p.r, p.level);
  rec["s"] = hex(p.s, p.level);
}

ordered_json inventory_json(const Inventory& inv, int level) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : inv.entries)
    entries.push_back(ordered_json{{"chart", e.chart},
                                   {"a", hex(e.a, level)},
                                   {"b", hex(e.b, level)},
                                   {"type", e.type.name()},
                                   {"components", e.components}});
  ordered_json counts = ordered_json::object();
  for (const auto& [t, n] : inv.counts()) counts[t] = n;
  return ordered_json{{"rational_surface", inv.rational_surface},
                      {"exceptional_components", inv.exceptional_components()},
                      {"counts", counts},
                      {"singularities", entries}};
}

ordered_json fibers_json(const std::vector<FiberEntry>& fibers) {
  ordered_json out = ordered_json::array();
  for (const auto& f : fibers) {
    ordered_json cyc = ordered_json::object();
    for (int i = 0; i < f.graph.size(); ++i) cyc[f.graph.vertex(i).id] = f.cycle[i];
    out.push_back(ordered_json{{"base", f.base},
                               {"through_quad", f.through_quad},
                               {"multiplicity", f.multiplicity},
                               {"singularities", f.singularities},
                               {"type", f.type.name()},
                               {"components", f.components},
                               {"connection_index", connection_index(root_type(f.type))},
                               {"cycle", cyc}});
  }
  return out;
}

ordered_json points_json(const RationalPoints& pts, int level) {
  ordered_json w = ordered_json::array();
  for (const auto& [al, be] : pts.witnesses) w.push_back(ordered_json{{"alpha", hex(al, level)}, {"beta", hex(be, level)}});
  return ordered_json{{"count", pts.count}, {"brute_force_count", pts.brute_force_count}, {"witnesses", w}};
}

Outcome cmd_verify_core(const Options&) {
  Checks chk;
  ordered_json rec{{"command", "verify-core"}};

  struct ChartCase {
    std::string label;
    Chart chart;
    std::string c, relation;
  };
  std::vector<ChartCase> cases{
      {"fixed", fixed_chart(), "x*(y^4 + s*y^2) + y*(x^4 + r*x^2)", "c^2 + a*(b^4 + s^2*b^2) + b*(a^4 + r^2*a^2)"},
      {"quad", quad_chart(), "(1 + s*v^2)*u^3 + (1 + r*u^2)*v^3", "c^2 + a^3 + b^3 + s^2*a^3*b^2 + r^2*a^2*b^3"}};
  ordered_json charts = ordered_json::object();
  for (const auto& cc : cases) {
    KernelData k = invariant_kernel_rank4(cc.chart);
    chk.add(cc.label + ".p_closed", is_p_closed(cc.chart.delta));
    chk.add(cc.label + ".relation_holds", verify_relation(cc.chart, k));
    chk.add(cc.label + ".c", k.c == MPoly::parse(cc.c), k.c.to_string());
    chk.add(cc.label + ".relation", k.relation == MPoly::parse(cc.relation), k.relation.to_string());
    Matrix4 m = cokernel_matrix(cc.chart);
    bool shape = true;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        MPoly want;
        if (i == 0 && j == 1) want = k.f;
        if (i == 0 && j == 2) want = k.g;
        if (i == 1 && j == 3) want = k.g;
        if (i == 2 && j == 3) want = k.f;
        if (!(m[i][j] == want)) shape = false;
      }
    chk.add(cc.label + ".cokernel_shape", shape);
    ordered_json rows = ordered_json::array();
    for (const auto& row : m) {
      ordered_json r = ordered_json::array();
      for (const auto& e : row) r.push_back(e.to_string());
      rows.push_back(r);
    }
    charts[cc.label] = ordered_json{{"delta", cc.chart.delta.to_string()},
                                    {"a", k.a.to_string()},
                                    {"b", k.b.to_string()},
                                    {"c", k.c.to_string()},
                                    {"relation", k.relation.to_string()},
                                    {"cokernel", rows}};
  }
  rec["charts"] = charts;

  RLieAlg alg = cusp_lie_algebra();
  AxiomReport ax = verify_pmap_axioms(alg, 2);
  chk.add("lie.pmap_axioms", ax.ok() && ax.exhaustive, ax.first_failure);
  auto cone = square_zero_cone(alg, 2);
  // The derived ideal: no u*D_u component.
  std::size_t expected = 0;
  for (const auto& v : all_vectors(alg.dim(), 2))
    if (v[2].is_zero()) ++expected;
  bool in_ideal = std::all_of(cone.begin(), cone.end(), [](const Vec& v) { return v[2].is_zero(); });
  chk.add("lie.square_zero_cone", in_ideal && cone.size() == expected,
          std::to_string(cone.size()) + " square-zero vectors");
  rec["lie"] = ordered_json{{"basis", alg.basis_names()},
                            {"pairs_tested", ax.pairs_tested},
                            {"exhaustive", ax.exhaustive},
                            {"square_zero_vectors", cone.size()}};
  bool ok = chk.ok();
  chk.write(rec, true);
  rec["ok"] = ok;
  return {rec, ok};
}

Outcome cmd_classify(const Options& o) {
  int k = level_of(o);
  ordered_json rec{{"command", "classify"}, {"field", level_name(k)}};
  CoverEq eq;
  FieldElem a0 = parse_field_elem(o.a, k), b0 = parse_field_elem(o.b, k);
  if (!o.equation.empty()) {
    eq = CoverEq{MPoly::parse(o.equation, k), k};
    rec["equation"] = eq.f.to_string(k);
  } else {
    SurfaceParams p = params_of(o);
    rec["r"] = hex(p.r, k);
    rec["s"] = hex(p.s, k);
    if (o.at == "quad")
      eq = quad_point_equation(p.action(), k);
    else if (o.at == "fixed")
      eq = fixed_point_equation(p.action(), k);
    else
      throw DomainError("--at must be quad or fixed");
    rec["at"] = o.at;
    rec["equation"] = eq.f.to_string(k);
  }
  rec["point"] = ordered_json{{"a", hex(a0, k)}, {"b", hex(b0, k)}};
  BlowupResult res = blowup_classify(eq, a0, b0, o.max_depth);
  std::string type = res.rdp ? res.type.name() : "NotRDP";
  rec["type"] = type;
  rec["rdp"] = res.rdp;
  if (!res.note.empty()) rec["note"] = res.note;
  rec["elliptic19_shape"] = res.elliptic19_shape;
  rec["generations"] = res.generations;
  rec["components"] = res.graph.size();
  rec["geometric_components"] = res.geometric.size();
  ordered_json nodes = ordered_json::array();
  for (const auto& n : res.nodes)
    nodes.push_back(ordered_json{{"address", n.address.empty() ? "." : n.address},
                                 {"depth", n.depth},
                                 {"order", n.order},
                                 {"a1", n.a1},
                                 {"vertex", n.vertex},
                                 {"branch", n.branch},
                                 {"through", n.curves_through}});
  rec["nodes"] = nodes;
  rec["graph"] = graph_json(res.graph);
  Checks chk;
  if (!o.expect.empty()) chk.add("type", type == o.expect, "got " + type + ", expected " + o.expect);
  bool ok = chk.ok();
  chk.write(rec, false);
  rec["ok"] = ok;
  return {rec, ok};
}

Outcome cmd_inventory(const Options& o) {
  SurfaceParams p = params_of(o);
  ordered_json rec{{"command", "inventory"}};
  put_params(rec, p);
  rec["inventory"] = inventory_json(singularity_inventory(p), p.level);
  rec["failures"] = ordered_json::array();
  rec["ok"] = true;
  return {rec, true};
}

Outcome cmd_fibers(const Options& o) {
  SurfaceParams p = params_of(o);
  ordered_json rec{{"command", "fibers"}};
  put_params(rec, p);
  rec["projection"] = o.projection;
  auto fibers = fiber_catalog(p, o.projection);
  int excess = 0;
  for (const auto& f : fibers) excess += f.components - 1;
  rec["fibers"] = fibers_json(fibers);
  rec["excess_components"] = excess;
  rec["failures"] = ordered_json::array();
  rec["ok"] = true;
  return {rec, true};
}

Outcome cmd_points(const Options& o) {
  SurfaceParams p = params_of(o);
  ordered_json rec{{"command", "points"}};
  put_params(rec, p);
  RationalPoints pts = rational_points(p);
  rec["points"] = points_json(pts, p.level);
  Checks chk;
  chk.add("brute_force", pts.count == pts.brute_force_count);
  if (!o.expect.empty())
    chk.add("count", std::to_string(pts.count) == o.expect,
            "got " + std::to_string(pts.count) + ", expected " + o.expect);
  bool ok = chk.ok();
  chk.write(rec, false);
  rec["ok"] = ok;
  return {rec, ok};
}

Outcome cmd_artin(const Options& o) {
  SurfaceParams p = params_of(o);
  SurfaceReport rep = surface_report(p);
  ordered_json rec{{"command", "artin"}};
  put_params(rec, p);
  ordered_json idx = ordered_json::array();
  long long prod = 1;
  for (const auto& f : rep.fibers) {
    long long d = connection_index(root_type(f.type));
    prod *= d;
    idx.push_back(ordered_json{{"fiber", f.base}, {"type", f.type.name()}, {"index", d}});
  }
  rec["fibers"] = idx;
  rec["discriminant"] = prod;
  rec["points"] = rep.points.count;
  rec["n"] = rep.n;
  rec["sigma0"] = rep.sigma0;
  rec["ratio_in_p1f4"] = rep.ratio_in_p1f4;
  Checks chk;
  chk.add("p1f4_rule", (rep.sigma0 == 1) == rep.ratio_in_p1f4);
  if (!o.expect.empty())
    chk.add("sigma0", std::to_string(rep.sigma0) == o.expect,
            "got " + std::to_string(rep.sigma0) + ", expected " + o.expect);
  bool ok = chk.ok();
  chk.write(rec, false);
  rec["ok"] = ok;
  return {rec, ok};
}

Outcome cmd_report(const Options& o) {
  SurfaceParams p = params_of(o);
  SurfaceReport rep = surface_report(p);
  ordered_json rec{{"command", "report"}};
  put_params(rec, p);
  rec["inventory"] = inventory_json(rep.inventory, p.level);
  rec["fibers"] = fibers_json(rep.fibers);
  rec["points"] = points_json(rep.points, p.level);
  rec["n"] = rep.n;
  rec["sigma0"] = rep.sigma0;
  rec["rho"] = rep.rho;
  rec["exceptional_components"] = rep.exceptional_components;
  rec["ratio_in_p1f4"] = rep.ratio_in_p1f4;
  rec["failures"] = ordered_json::array();
  rec["ok"] = true;
  return {rec, true};
}

Outcome cmd_fundamental_cycle(const Options& o) {
  if (o.graph.empty()) throw DomainError("--graph is required");
  ResGraph g = load_graph(o.graph);
  Cycle cprime(g.size(), 0);
  if (!o.curve.empty()) cprime = g.cycle(parse_cycle_text(o.curve));
  std::vector<int> support;
  if (!o.support.empty()) {
    for (const auto& id : split_ids(o.support)) support.push_back(g.require(id));
  } else {
    for (int i = 0; i < g.size(); ++i)
      if (cprime[i] == 0) support.push_back(i);
  }
  std::sort(support.begin(), support.end());
  ordered_json rec{{"command", "fundamental-cycle"}};
  ordered_json ids = ordered_json::array();
  for (int i : support) ids.push_back(g.vertex(i).id);
  rec["support"] = ids;
  rec["curve"] = cycle_json(g, cprime);
  Cycle z = fundamental_cycle(g, support, cprime);
  rec["cycle"] = cycle_json(g, z);
  rec["cycle_text"] = g.cycle_to_string(z);
  bool has_curve = std::any_of(cprime.begin(), cprime.end(), [](long long c) { return c != 0; });
  if (has_curve) {
    Cycle pre = schematic_preimage(g, support, cprime);
    rec["preimage"] = cycle_json(g, pre);
    BlowDown bd = blown_down_set(g, support, cprime);
    ordered_json exc = ordered_json::array(), rem = ordered_json::array();
    for (int i : bd.exceptional) exc.push_back(g.vertex(i).id);
    for (int i : bd.remaining) rem.push_back(g.vertex(i).id);
    rec["exceptional"] = exc;
    rec["remaining"] = rem;
  } else {
    ResGraph sub = g.induced(support);
    Cycle zs;
    for (int i : support) zs.push_back(z[i]);
    if (is_negative_definite(sub)) {
      rec["type"] = classify(sub).name();
      rec["pa"] = cycle_pa(sub, zs);
    }
    rec["self_intersection"] = sub.dot(zs, zs);
  }
  rec["failures"] = ordered_json::array();
  rec["ok"] = true;
  return {rec, true};
}

Outcome cmd_replay(const Options& o) {
  BlowupTable t = o.file.empty() ? load_blowup_table(o.table) : parse_blowup_table(read_text_file(o.file));
  ReplayReport rep = replay_table(t);
  ordered_json rec{{"command", "replay"}, {"fiber", t.fiber}, {"white", t.white}};
  ordered_json rows = ordered_json::array();
  Checks chk;
  int verified = 0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const RowCheck& r = rep.rows[i];
    rows.push_back(ordered_json{{"stage", r.stage},
                                {"rdp", r.rdp},
                                {"preimage", r.preimage},
                                {"exceptional", r.exceptional},
                                {"rdp_ok", r.rdp_ok},
                                {"preimage_ok", r.preimage_ok},
                                {"exceptional_ok", r.exceptional_ok}});
    if (r.ok()) ++verified;
    std::string st = "row " + std::to_string(r.stage);
    if (!r.rdp_ok) chk.add(st + ".rdp", false, "computed " + r.rdp);
    if (!r.preimage_ok) chk.add(st + ".preimage", false, "computed " + r.preimage);
    if (!r.exceptional_ok) chk.add(st + ".exceptional", false, "computed " + r.exceptional);
  }
  chk.add("ends_resolved", rep.ends_resolved, "curves remain contracted after the last row");
  chk.add("rows_present", !rep.rows.empty());
  rec["rows"] = rows;
  rec["rows_verified"] = verified;
  bool ok = chk.ok();
  chk.write(rec, false);
  rec["ok"] = ok;
  return {rec, ok};
}

Outcome cmd_specialize_check(const Options& o) {
  SpecializationMap m = o.file.empty() ? load_specialization() : parse_specialization(read_text_file(o.file));
  SpecializationReport rep = specialization_check(m);
  ordered_json rec{{"command", "specialize-check"}, {"source", m.source}, {"target", m.target}};
  rec["gram_ok"] = rep.gram_ok;
  rec["fiber_ok"] = rep.fiber_ok;
  rec["gram"] = rep.image_gram;
  Checks chk;
  for (const auto& mm : rep.mismatches) chk.add("mismatch", false, mm);
  chk.add("gram", rep.gram_ok);
  chk.add("fiber", rep.fiber_ok);
  bool ok = chk.ok();
  chk.write(rec, false);
  rec["ok"] = ok;
  return {rec, ok};
}

Outcome cmd_sweep(const Options& o) {
  int k = level_of(o);
  SweepReport rep = sweep(k, o.threads);
  ordered_json rec{{"command", "sweep"}, {"field", level_name(k)}, {"pairs", rep.rows.size()}};
  std::map<int, int> hist;
  ordered_json rows = ordered_json::array();
  Checks chk;
  for (const auto& r : rep.rows) {
    ++hist[r.sigma0];
    ordered_json row{{"r", hex(r.r, k)}, {"s", hex(r.s, k)}, {"in_p1f4", r.ratio_in_p1f4},
                     {"sigma0", r.sigma0}, {"points", r.points}};
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(row);
    if (!r.ok())
      chk.add("rule", false, "r=" + hex(r.r, k) + " s=" + hex(r.s, k) + (r.error.empty() ? "" : ": " + r.error));
  }
  ordered_json h = ordered_json::object();
  for (const auto& [sg, n] : hist) h["sigma0=" + std::to_string(sg)] = n;
  rec["histogram"] = h;
  rec["exceptions"] = rep.exceptions();
  rec["rows"] = rows;
  bool ok = chk.ok();
  chk.write(rec, false);
  rec["ok"] = ok;
  return {rec, ok};
}

Outcome cmd_deformation_normalize(const Options& o) {
  if (o.g.empty()) throw DomainError("--g is required");
  MPoly g = MPoly::parse(o.g, 8);
  auto steps = deformation_normalize(g, o.degree);
  ordered_json rec{{"command", "deformation-normalize"}, {"g", g.to_string()}, {"degree", o.degree}};
  ordered_json subs = ordered_json::array();
  MPoly f0 = MPoly::parse("a^3 + b^3");
  MPoly f = f0 + g;
  for (const auto& st : steps) {
    subs.push_back(ordered_json{{"var", st.var}, {"value", st.value.to_string()}});
    f = truncate(f.substitute(st.var, st.value), o.degree);
  }
  MPoly rest = truncate(f, o.degree) + truncate(f0, o.degree);
  rec["substitutions"] = subs;
  rec["remainder_up_to_degree"] = rest.to_string();
  Checks chk;
  chk.add("normalized", rest.is_zero(), "left " + rest.to_string());
  bool ok = chk.ok();
  chk.write(rec, false);
  rec["ok"] = ok;
  return {rec, ok};
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const InconsistentInput*>(&e)) return "inconsistent";
  if (dynamic_cast<const InternalCheckFailed*>(&e)) return "internal-check";
  return "error";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computations on the alpha_2 quotients of a product of cuspidal curves"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));

  auto add_params = [&](CLI::App* c) {
    c->add_option("--field", o.field, "f2, f4, f16 or f256")->capture_default_str();
    c->add_option("--r", o.r, "hex mask of r")->capture_default_str();
    c->add_option("--s", o.s, "hex mask of s")->capture_default_str();
  };
  std::map<std::string, std::function<Outcome(const Options&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Outcome(const Options&)> h) {
    handlers[name] = std::move(h);
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    return c;
  };

  sub("verify-core", "p-closedness, invariant relations, cokernel matrices, Lie axioms", cmd_verify_core);
  auto* cl = sub("classify", "resolve one singular point of the double cover", cmd_classify);
  add_params(cl);
  cl->add_option("--at", o.at, "quad or fixed")->check(CLI::IsMember({"quad", "fixed"}));
  cl->add_option("--a", o.a, "first coordinate of the point");
  cl->add_option("--b", o.b, "second coordinate of the point");
  cl->add_option("--equation", o.equation, "branch polynomial f(a,b) of c^2 = f");
  cl->add_option("--max-depth", o.max_depth);
  cl->add_option("--expect", o.expect, "fail unless the type is this (e.g. D4, NotRDP)");
  add_params(sub("inventory", "singularities of the quotient", cmd_inventory));
  auto* fb = sub("fibers", "reducible fibers of a projection", cmd_fibers);
  add_params(fb);
  fb->add_option("--projection", o.projection)->check(CLI::IsMember({1, 2}));
  auto* pt = sub("points", "rational points of the generic fiber", cmd_points);
  add_params(pt);
  pt->add_option("--expect", o.expect, "expected count");
  auto* ar = sub("artin", "Artin invariant", cmd_artin);
  add_params(ar);
  ar->add_option("--expect", o.expect, "expected sigma0");
  add_params(sub("report", "full surface report", cmd_report));
  auto* fc = sub("fundamental-cycle", "fundamental cycle of a graph file", cmd_fundamental_cycle);
  fc->add_option("--graph", o.graph, "graph JSON file")->required();
  fc->add_option("--curve", o.curve, "C' as 2E5+E6 or a JSON object");
  fc->add_option("--support", o.support, "comma-separated contracted curves");
  auto* rp = sub("replay", "replay a blowup table", cmd_replay);
  rp->add_option("--table", o.table)->check(CLI::IsMember({"d8", "e8"}));
  rp->add_option("--file", o.file, "table JSON instead of the bundled one");
  sub("specialize-check", "check the D~8 -> E~8 specialization map", cmd_specialize_check)
      ->add_option("--file", o.file, "map JSON instead of the bundled one");
  auto* sw = sub("sweep", "Artin invariants for every (r,s)", cmd_sweep);
  sw->add_option("--field", o.field)->check(CLI::IsMember({"f4", "f16"}));
  sw->add_option("--threads", o.threads);
  auto* dn = sub("deformation-normalize", "remove a perturbation of c^2+a^3+b^3", cmd_deformation_normalize);
  dn->add_option("--g", o.g, "perturbation in a, b")->required();
  dn->add_option("--degree", o.degree, "truncation degree")->capture_default_str();

  std::vector<const char*> argv{"cuspk3"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Outcome res;
  int code = kOk;
  try {
    res = handlers.at(name)(o);
    code = res.ok ? kOk : kCheckFailed;
  } catch (const std::exception& e) {
    std::string kind = error_kind(e);
    bool bad_input = kind == "parse" || kind == "domain";
    res.record = ordered_json{{"command", name},
                              {"ok", false},
                              {"failures", ordered_json::array({ordered_json{{"check", kind}, {"detail", e.what()}}})}};
    code = bad_input ? kBadInput : kCheckFailed;
    err << "cuspk3 " << name << ": " << e.what() << "\n";
  }
  if (o.format == "table")
    render(res.record, out, "");
  else
    out << res.record.dump(2) << "\n";
  return code;
}

}  // namespace cuspk3::cli
