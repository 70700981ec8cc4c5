// Per-parameter reports for the quotient surface of C x C: singularities,
// quasielliptic fibers, rational points of the generic fiber, Artin
// invariant and Picard number.  Also replays the blowup tables and the
// specialization map shipped in core/data.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cuspk3/doublecover.hpp"
#include "cuspk3/gf2k.hpp"
#include "cuspk3/quotient.hpp"
#include "cuspk3/resgraph.hpp"

namespace cuspk3 {

struct SurfaceParams {
  int level = 2;
  FieldElem r, s;
  ActionParams action() const { return {r, s}; }
};
// Checks that r and s lie in F_{2^level}.
SurfaceParams make_params(int level, FieldElem r, FieldElem s);
std::string to_string(const SurfaceParams& p);

struct InventoryEntry {
  std::string chart;  // "quad" or "fixed"
  FieldElem a, b;     // chart coordinates on the quotient
  SingularityType type;
  ResGraph graph;     // folded exceptional configuration (all (-2)-curves)
  int components = 0; // curves over the ground field
};

struct Inventory {
  std::vector<InventoryEntry> entries;
  bool rational_surface = false;  // r = s = 0
  int exceptional_components() const;
  // "D4" -> count, in type order.
  std::map<std::string, int> counts() const;
};
// Types follow the case rule (quadruple point D4 or B3; fixed points D4, D8
// or the elliptic 19_0 point); every entry is re-derived by blowup_classify
// and a disagreement throws InternalCheckFailed.
Inventory singularity_inventory(const SurfaceParams& p);

struct FiberEntry {
  std::string base;        // "v=0", "v^-2=0", "v^-2=0x2" (u for projection 1)
  bool through_quad = false;
  int multiplicity = 1;
  std::vector<std::string> singularities;
  FiberType type;
  int components = 0;
  ResGraph graph;          // strict transform "C" glued to the singularity graphs
  std::vector<long long> cycle;  // multiplicities per graph vertex
};
// Reducible fibers of the projection to the second (2) or first (1) factor.
// The strict transform of the fiber is attached to one vertex of each
// singularity graph in every possible way; exactly one fiber type must come
// out with the strict transform at the fiber's multiplicity.
std::vector<FiberEntry> fiber_catalog(const SurfaceParams& p, int projection = 2);
std::vector<FiberEntry> fiber_catalog(const SurfaceParams& p, const Inventory& inv, int projection);

struct RationalPoints {
  int count = 0;
  std::vector<std::pair<FieldElem, FieldElem>> witnesses;  // (alpha, beta)
  int brute_force_count = 0;
};
// Solutions of alpha^4 = alpha, r alpha^2 = s alpha, beta^2 (beta^2 + r) = 0
// over F_{2^level}, by case analysis; brute force must agree.
RationalPoints rational_points(const SurfaceParams& p);

struct SurfaceReport {
  SurfaceParams params;
  Inventory inventory;
  std::vector<FiberEntry> fibers;
  RationalPoints points;
  int n = 0;
  int sigma0 = 0;
  int rho = 0;
  int exceptional_components = 0;
  bool ratio_in_p1f4 = false;
};
// Needs F4 in the ground field and (r,s) != (0,0).  Cross-checks both
// projections and the P^1(F4) rule; any inconsistency throws InternalCheckFailed.
SurfaceReport surface_report(const SurfaceParams& p);

// Same inventory types, fiber types, point count, sigma0 and rho.
bool reports_agree(const SurfaceReport& a, const SurfaceReport& b);

// y^2 = (1 + s^2 b^2) x^3 + r^2 b^3 x^2 + b^3 as the polynomial
// y^2 + rhs in x, y, b; symbolic in r, s without params.
MPoly weierstrass(const std::optional<ActionParams>& params = std::nullopt);
// W_{r,s}(t^2 b, t^2 x, t^3 y) == t^6 W_{t^2 r, t^2 s}(b, x, y) with t, r, s symbolic,
// and W agrees with the quadruple-point branch under x = a, y = c.
bool rescale_check();

// Blowup tables: each row names the center by its strict transform on the
// resolution and records the preimage cycle, the curves blown down and the
// singularities present before the step.
struct TableRow {
  int stage = 0;
  std::vector<std::string> rdp;
  std::map<std::string, long long> center;
  std::map<std::string, long long> preimage;
  std::vector<std::string> exceptional;
};
struct BlowupTable {
  std::string fiber;  // "D~8" or "E~8"
  std::string white;  // the only curve not contracted at the start
  std::vector<TableRow> rows;
};
BlowupTable load_blowup_table(const std::string& which);  // "d8" | "e8"
BlowupTable parse_blowup_table(const std::string& json_text);

struct RowCheck {
  int stage = 0;
  bool preimage_ok = false, exceptional_ok = false, rdp_ok = false;
  std::string preimage, exceptional, rdp;  // computed values
  bool ok() const { return preimage_ok && exceptional_ok && rdp_ok; }
};
struct ReplayReport {
  std::string fiber;
  std::vector<RowCheck> rows;
  bool ends_resolved = false;  // nothing left contracted after the last row
  bool ok() const;
};
ReplayReport replay_table(const BlowupTable& t);

struct SpecializationMap {
  std::string source, target;
  std::map<std::string, std::map<std::string, long long>> images;
};
SpecializationMap load_specialization();
SpecializationMap parse_specialization(const std::string& json_text);
struct SpecializationReport {
  IntMatrix source_gram, image_gram;
  std::vector<std::string> mismatches;
  bool gram_ok = false;
  bool fiber_ok = false;
  bool ok() const { return gram_ok && fiber_ok; }
};
SpecializationReport specialization_check(const SpecializationMap& m);

struct SweepRow {
  FieldElem r, s;
  bool ratio_in_p1f4 = false;
  int sigma0 = 0, rho = 0, points = 0;
  std::string error;  // empty when the report succeeded
  std::optional<SurfaceReport> report;  // only with keep_reports
  bool ok() const;    // no error and sigma0 == 1 exactly on P^1(F4) ratios
};
struct SweepReport {
  int level = 0;
  std::vector<SweepRow> rows;
  int exceptions() const;
};
// Every (r,s) != (0,0) over F_{2^level}, level 2 or 4.  threads = 0 picks
// the hardware concurrency.  Rows come in mask order of (r, s).
SweepReport sweep(int level, unsigned threads = 0, bool keep_reports = false);

}  // namespace cuspk3
