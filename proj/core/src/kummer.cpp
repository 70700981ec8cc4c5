#include "cuspk3/kummer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <thread>

#include "cuspk3/error.hpp"
#include "cuspk3/json_io.hpp"
#include "json.hpp"

namespace cuspk3 {

using nlohmann::json;

SurfaceParams make_params(int level, FieldElem r, FieldElem s) {
  if (!is_level(level)) throw DomainError("unknown field level " + std::to_string(level));
  if (!r.in_subfield(level) || !s.in_subfield(level)) throw DomainError("r and s must lie in " + level_name(level));
  return SurfaceParams{level, r.at_level(level), s.at_level(level)};
}

std::string to_string(const SurfaceParams& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s r=0x%x s=0x%x", level_name(p.level).c_str(), p.r.mask(p.level), p.s.mask(p.level));
  return buf;
}

// ---------------------------------------------------------------------------
// Singularities

int Inventory::exceptional_components() const {
  int n = 0;
  for (const auto& e : entries) n += e.components;
  return n;
}

std::map<std::string, int> Inventory::counts() const {
  std::map<std::string, int> out;
  for (const auto& e : entries) ++out[e.type.name()];
  return out;
}

namespace {

SingularityType expected_fixed_type(const SurfaceParams& p) {
  bool r0 = p.r.is_zero(), s0 = p.s.is_zero();
  if (r0 && s0) return {Family::Elliptic19, 6, p.level < 2};
  if (r0 || s0) return {Family::D, 8, false};
  return {Family::D, 4, false};
}

}  // namespace

Inventory singularity_inventory(const SurfaceParams& p) {
  Inventory inv;
  inv.rational_surface = p.r.is_zero() && p.s.is_zero();

  SingularityType quad_type = p.level >= 2 ? SingularityType{Family::D, 4, false} : SingularityType{Family::B, 3, true};
  BlowupResult q = blowup_classify(quad_point_equation(p.action(), p.level), FieldElem::zero(p.level),
                                   FieldElem::zero(p.level));
  if (!q.rdp || !(q.type == quad_type))
    throw InternalCheckFailed("quadruple point classified as " + q.type.name() + ", expected " + quad_type.name());
  inv.entries.push_back({"quad", FieldElem::zero(p.level), FieldElem::zero(p.level), q.type, q.graph, q.graph.size()});

  SingularityType ft = expected_fixed_type(p);
  CoverEq eq = fixed_point_equation(p.action(), p.level);
  for (const auto& fp : fixed_points(p.action())) {
    BlowupResult res = blowup_classify(eq, fp.a, fp.b);
    InventoryEntry e{"fixed", fp.a.at_level(p.level), fp.b.at_level(p.level), ft, res.graph, res.graph.size()};
    if (ft.family == Family::Elliptic19) {
      if (res.rdp || !res.elliptic19_shape || res.graph.is_twisted() != ft.twisted)
        throw InternalCheckFailed("the fixed point of the r = s = 0 surface did not show the 19_0 configuration");
      e.graph = elliptic19_graph(ft.twisted);
      e.components = e.graph.size();
    } else if (!res.rdp || !(res.type == ft)) {
      throw InternalCheckFailed("fixed point (" + fp.a.to_string() + ", " + fp.b.to_string() + ") classified as " +
                                res.type.name() + ", expected " + ft.name());
    }
    inv.entries.push_back(std::move(e));
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Fibers

namespace {

struct Glued {
  FiberType type;
  ResGraph graph;
};

// Attach a (-2)-curve "C" to one vertex of each graph in every way and keep
// the extended Dynkin outcomes whose C has multiplicity `mult`.
Glued glue_fiber(const std::vector<const ResGraph*>& parts, int mult) {
  std::vector<int> choice(parts.size(), 0);
  std::map<std::string, Glued> found;
  while (true) {
    ResGraph g;
    g.add_vertex("C");
    std::vector<int> offset;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      offset.push_back(g.size());
      const ResGraph& part = *parts[i];
      std::string prefix = "S" + std::to_string(i + 1) + ".";
      for (const auto& v : part.vertices()) g.add_vertex(Vertex{prefix + v.id, v.self_int, v.genus, v.deg});
      for (int a = 0; a < part.size(); ++a)
        for (int b = a + 1; b < part.size(); ++b)
          if (part.pairing(a, b) != 0) g.set_edge(offset[i] + a, offset[i] + b, part.pairing(a, b));
      g.set_edge(0, offset[i] + choice[i]);
    }
    FiberType t = fiber_type(g);
    if (t.family != Family::Unknown && t.multiplicities.at(0) == mult && !found.count(t.name()))
      found[t.name()] = Glued{t, g};
    std::size_t k = 0;
    while (k < parts.size() && ++choice[k] == parts[k]->size()) choice[k++] = 0;
    if (k == parts.size()) break;
  }
  if (found.size() != 1) {
    std::string names;
    for (const auto& [n, g] : found) names += " " + n;
    throw InternalCheckFailed("fiber type not determined by the gluing rule; candidates:" +
                              (names.empty() ? std::string(" none") : names));
  }
  return found.begin()->second;
}

}  // namespace

std::vector<FiberEntry> fiber_catalog(const SurfaceParams& p, int projection) {
  return fiber_catalog(p, singularity_inventory(p), projection);
}

std::vector<FiberEntry> fiber_catalog(const SurfaceParams& p, const Inventory& inv, int projection) {
  if (p.r.is_zero() && p.s.is_zero()) throw DomainError("r = s = 0 gives a rational surface, not a fibered K3");
  if (projection != 1 && projection != 2) throw DomainError("projection must be 1 or 2");
  const std::string base = projection == 2 ? "v" : "u";
  std::vector<FiberEntry> out;

  const InventoryEntry* quad = nullptr;
  std::map<FieldElem, std::vector<const InventoryEntry*>> fixed_by_base;
  for (const auto& e : inv.entries) {
    if (e.chart == "quad")
      quad = &e;
    else
      fixed_by_base[projection == 2 ? e.b : e.a].push_back(&e);
  }
  if (!quad) throw InternalCheckFailed("inventory without the quadruple point");

  auto make = [&](const std::string& label, bool through_quad, int mult, const std::vector<const InventoryEntry*>& sing) {
    FiberEntry f;
    f.base = label;
    f.through_quad = through_quad;
    f.multiplicity = mult;
    std::vector<const ResGraph*> parts;
    for (const auto* e : sing) {
      f.singularities.push_back(e->type.name());
      parts.push_back(&e->graph);
    }
    Glued g = glue_fiber(parts, mult);
    f.type = g.type;
    f.graph = g.graph;
    f.cycle = g.type.multiplicities;
    f.components = f.graph.size();
    return f;
  };

  // The fiber through the quadruple point carries no fixed point.
  out.push_back(make(base + "=0", true, 1, {quad}));
  for (const auto& [value, sing] : fixed_by_base) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%x", value.mask(p.level));
    std::string label = base + "^-2=" + (value.is_zero() ? std::string("0") : std::string(buf));
    out.push_back(make(label, false, 2, sing));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rational points

namespace {

bool satisfies(FieldElem r, FieldElem s, FieldElem al, FieldElem be) {
  return al.pow(4) == al && r * al * al == al * s && (be * be * (be * be + r)).is_zero();
}

}  // namespace

RationalPoints rational_points(const SurfaceParams& p) {
  if (p.r.is_zero() && p.s.is_zero()) throw DomainError("r = s = 0 gives a rational surface");
  // alpha in F4 with alpha (r alpha + s) = 0; beta in {0, sqrt r}.
  std::vector<FieldElem> alphas{FieldElem::zero(p.level)};
  if (!p.r.is_zero() && !p.s.is_zero()) {
    FieldElem ratio = p.s / p.r;
    if (ratio.in_subfield(2)) alphas.push_back(ratio);
  }
  std::vector<FieldElem> betas{FieldElem::zero(p.level)};
  if (!p.r.is_zero()) betas.push_back(p.r.sqrt());

  RationalPoints out;
  for (auto al : alphas)
    for (auto be : betas) {
      if (!satisfies(p.r, p.s, al, be)) throw InternalCheckFailed("case analysis produced a non-solution");
      out.witnesses.emplace_back(al.at_level(p.level), be.at_level(p.level));
    }
  std::sort(out.witnesses.begin(), out.witnesses.end());
  out.count = static_cast<int>(out.witnesses.size());

  std::vector<std::pair<FieldElem, FieldElem>> brute;
  for (auto al : elements(p.level))
    for (auto be : elements(p.level))
      if (satisfies(p.r, p.s, al, be)) brute.emplace_back(al, be);
  std::sort(brute.begin(), brute.end());
  out.brute_force_count = static_cast<int>(brute.size());
  if (brute != out.witnesses) throw InternalCheckFailed("rational points: case analysis and enumeration disagree");
  if (out.count != 1 && out.count != 2 && out.count != 4)
    throw InternalCheckFailed("point count " + std::to_string(out.count) + " is not 1, 2 or 4");
  return out;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

int log2_exact(int n) {
  int e = 0;
  while ((1 << e) < n) ++e;
  if ((1 << e) != n) throw InternalCheckFailed(std::to_string(n) + " is not a power of two");
  return e;
}

struct ProjectionData {
  std::vector<FiberEntry> fibers;
  RationalPoints points;
  int n, sigma0, rho, excess;
};

ProjectionData project(const SurfaceParams& p, const Inventory& inv, int projection) {
  ProjectionData d;
  d.fibers = fiber_catalog(p, inv, projection);
  SurfaceParams q = p;
  if (projection == 1) std::swap(q.r, q.s);
  d.points = rational_points(q);
  d.n = log2_exact(d.points.count);
  std::vector<FiberType> types;
  std::vector<int> comps;
  d.excess = 0;
  for (const auto& f : d.fibers) {
    types.push_back(f.type);
    comps.push_back(f.components);
    d.excess += f.components - 1;
  }
  try {
    d.sigma0 = artin_invariant_from_data(types, d.n);
  } catch (const InconsistentInput& e) {
    throw InternalCheckFailed(std::string("fiber data inconsistent: ") + e.what());
  }
  d.rho = picard_tate_shioda(comps);
  return d;
}

}  // namespace

SurfaceReport surface_report(const SurfaceParams& p) {
  if (p.level < 2) throw DomainError("surface reports need F4 in the ground field");
  if (p.r.is_zero() && p.s.is_zero()) throw DomainError("r = s = 0 gives a rational surface, not a K3");
  SurfaceReport rep;
  rep.params = p;
  rep.inventory = singularity_inventory(p);
  rep.exceptional_components = rep.inventory.exceptional_components();
  ProjectionData d2 = project(p, rep.inventory, 2);
  ProjectionData d1 = project(p, rep.inventory, 1);
  rep.fibers = d2.fibers;
  rep.points = d2.points;
  rep.n = d2.n;
  rep.sigma0 = d2.sigma0;
  rep.rho = d2.rho;
  rep.ratio_in_p1f4 = in_P1F4(p.r, p.s);

  const std::string where = " for " + to_string(p);
  if (rep.exceptional_components != 20)
    throw InternalCheckFailed(std::to_string(rep.exceptional_components) + " exceptional curves" + where);
  if (d2.excess != 20 || d1.excess != 20) throw InternalCheckFailed("fiber components do not add up to 20" + where);
  if (rep.rho != 22 || d1.rho != 22) throw InternalCheckFailed("Picard number is not 22" + where);
  if (d1.sigma0 != d2.sigma0) throw InternalCheckFailed("the two projections give different sigma0" + where);
  if ((rep.sigma0 == 1) != rep.ratio_in_p1f4) throw InternalCheckFailed("sigma0 breaks the P^1(F4) rule" + where);
  if (rep.sigma0 < 1 || rep.sigma0 > 2) throw InternalCheckFailed("sigma0 outside {1, 2}" + where);
  return rep;
}

bool reports_agree(const SurfaceReport& a, const SurfaceReport& b) {
  auto fiber_names = [](const SurfaceReport& r) {
    std::multiset<std::string> out;
    for (const auto& f : r.fibers) out.insert(f.type.name() + "/" + std::to_string(f.multiplicity));
    return out;
  };
  return a.inventory.counts() == b.inventory.counts() && fiber_names(a) == fiber_names(b) &&
         a.points.count == b.points.count && a.sigma0 == b.sigma0 && a.rho == b.rho;
}

// ---------------------------------------------------------------------------
// Weierstrass form

MPoly weierstrass(const std::optional<ActionParams>& params) {
  MPoly r = params ? MPoly(params->r) : MPoly::var("r");
  MPoly s = params ? MPoly(params->s) : MPoly::var("s");
  MPoly x = MPoly::var("x"), y = MPoly::var("y"), b = MPoly::var("b");
  return y.pow(2) + (MPoly(FieldElem::one()) + s.pow(2) * b.pow(2)) * x.pow(3) + r.pow(2) * b.pow(3) * x.pow(2) +
         b.pow(3);
}

bool rescale_check() {
  MPoly t = MPoly::var("t");
  MPoly w = weierstrass();
  MPoly lhs = w.substitute(std::map<std::string, MPoly>{
      {"b", t.pow(2) * MPoly::var("b")}, {"x", t.pow(2) * MPoly::var("x")}, {"y", t.pow(3) * MPoly::var("y")}});
  MPoly rhs = t.pow(6) * w.substitute(std::map<std::string, MPoly>{{"r", t.pow(2) * MPoly::var("r")},
                                                                    {"s", t.pow(2) * MPoly::var("s")}});
  if (lhs != rhs) return false;
  // The quadruple-point relation, read with x = a and y = c, is the same cubic.
  KernelData k = invariant_kernel_rank4(quad_chart());
  MPoly rel = k.relation.rename({{"a", "x"}, {"c", "y"}});
  return rel == w;
}

// ---------------------------------------------------------------------------
// Blowup tables

namespace {

json parse_data(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::map<std::string, long long> as_cycle(const json& j) {
  if (!j.is_object()) throw ParseError("cycle must be an object");
  std::map<std::string, long long> out;
  for (const auto& [k, v] : j.items()) out[k] = v.get<long long>();
  return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : "+") + s;
  return out.empty() ? "-" : out;
}

ResGraph fiber_graph(const std::string& name) {
  FiberType t = parse_fiber_type(name);
  return extended_dynkin_graph(t.family, t.rank);
}

}  // namespace

BlowupTable parse_blowup_table(const std::string& text) {
  json j = parse_data(text);
  try {
    BlowupTable t;
    t.fiber = j.at("fiber").get<std::string>();
    t.white = j.at("white").get<std::string>();
    for (const auto& r : j.at("rows")) {
      TableRow row;
      row.stage = r.at("stage").get<int>();
      row.rdp = r.at("rdp").get<std::vector<std::string>>();
      row.center = as_cycle(r.at("center"));
      row.preimage = as_cycle(r.at("preimage"));
      row.exceptional = r.at("exceptional").get<std::vector<std::string>>();
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed blowup table: ") + e.what());
  }
}

BlowupTable load_blowup_table(const std::string& which) {
  if (which != "d8" && which != "e8") throw DomainError("table must be d8 or e8");
  return parse_blowup_table(bundled_data("blowups_" + which + ".json"));
}

bool ReplayReport::ok() const {
  if (rows.empty() || !ends_resolved) return false;
  return std::all_of(rows.begin(), rows.end(), [](const RowCheck& r) { return r.ok(); });
}

ReplayReport replay_table(const BlowupTable& t) {
  ResGraph g = fiber_graph(t.fiber);
  ReplayReport rep;
  rep.fiber = t.fiber;
  std::vector<int> contracted;
  const int white = g.require(t.white);
  for (int i = 0; i < g.size(); ++i)
    if (i != white) contracted.push_back(i);

  for (const auto& row : t.rows) {
    RowCheck chk;
    chk.stage = row.stage;
    if (contracted.empty()) {
      chk.rdp = "-";
      rep.rows.push_back(chk);
      continue;
    }
    std::vector<std::string> rdp;
    for (const auto& comp : g.components(contracted)) rdp.push_back(classify(g.induced(comp)).name());
    chk.rdp = join(sorted(rdp));
    chk.rdp_ok = sorted(rdp) == sorted(row.rdp);

    Cycle center = g.cycle(row.center);
    Cycle pre = schematic_preimage(g, contracted, center);
    chk.preimage = g.cycle_to_string(pre);
    chk.preimage_ok = g.to_map(pre) == row.preimage;

    BlowDown bd = blown_down_set(g, contracted, center);
    std::vector<std::string> exc;
    for (int i : bd.exceptional) exc.push_back(g.vertex(i).id);
    chk.exceptional = join(sorted(exc));
    chk.exceptional_ok = sorted(exc) == sorted(row.exceptional);
    contracted = bd.remaining;
    rep.rows.push_back(chk);
  }
  rep.ends_resolved = contracted.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// Specialization

SpecializationMap parse_specialization(const std::string& text) {
  json j = parse_data(text);
  try {
    SpecializationMap m;
    m.source = j.at("source").get<std::string>();
    m.target = j.at("target").get<std::string>();
    for (const auto& [k, v] : j.at("map").items()) m.images[k] = as_cycle(v);
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed specialization map: ") + e.what());
  }
}

SpecializationMap load_specialization() {
  return parse_specialization(bundled_data("specialization_d8_e8.json"));
}

SpecializationReport specialization_check(const SpecializationMap& m) {
  ResGraph src = fiber_graph(m.source), tgt = fiber_graph(m.target);
  SpecializationReport rep;
  const int n = src.size();
  std::vector<Cycle> img;
  for (int i = 0; i < n; ++i) {
    auto it = m.images.find(src.vertex(i).id);
    if (it == m.images.end()) throw DomainError("no image for " + src.vertex(i).id);
    img.push_back(tgt.cycle(it->second));
  }
  if (static_cast<int>(m.images.size()) != n) throw DomainError("images listed for unknown components");
  rep.source_gram = src.matrix();
  rep.image_gram.assign(n, std::vector<long long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rep.image_gram[i][j] = tgt.dot(img[i], img[j]);
      if (rep.image_gram[i][j] != rep.source_gram[i][j])
        rep.mismatches.push_back(src.vertex(i).id + "." + src.vertex(j).id + ": " +
                                 std::to_string(rep.source_gram[i][j]) + " vs " + std::to_string(rep.image_gram[i][j]));
    }
  rep.gram_ok = rep.mismatches.empty();

  FiberType st = parse_fiber_type(m.source), tt = parse_fiber_type(m.target);
  auto ms = extended_multiplicities(st.family, st.rank);
  auto mt = extended_multiplicities(tt.family, tt.rank);
  Cycle total(tgt.size(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < tgt.size(); ++j) total[j] += ms[i] * img[i][j];
  rep.fiber_ok = total == Cycle(mt.begin(), mt.end());
  if (!rep.fiber_ok) rep.mismatches.push_back("fiber maps to " + tgt.cycle_to_string(total));
  return rep;
}

// ---------------------------------------------------------------------------
// Sweep

bool SweepRow::ok() const { return error.empty() && (sigma0 == 1) == ratio_in_p1f4; }

int SweepReport::exceptions() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.ok(); }));
}

SweepReport sweep(int level, unsigned threads, bool keep_reports) {
  if (level != 2 && level != 4) throw DomainError("sweep runs over f4 or f16");
  SweepReport rep;
  rep.level = level;
  for (auto r : elements(level))
    for (auto s : elements(level)) {
      if (r.is_zero() && s.is_zero()) continue;
      SweepRow row;
      row.r = r;
      row.s = s;
      row.ratio_in_p1f4 = in_P1F4(r, s);
      rep.rows.push_back(row);
    }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rep.rows.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rep.rows.size(); i = next++) {
      SweepRow& row = rep.rows[i];
      try {
        SurfaceReport sr = surface_report(make_params(level, row.r, row.s));
        row.sigma0 = sr.sigma0;
        row.rho = sr.rho;
        row.points = sr.points.count;
        if (keep_reports) row.report = std::move(sr);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rep;
}

}  // namespace cuspk3
