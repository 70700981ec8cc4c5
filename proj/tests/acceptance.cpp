// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.  Every check is exact.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "cuspk3/doublecover.hpp"
#include "cuspk3/kummer.hpp"
#include "cuspk3/liealg.hpp"
#include "cuspk3/quotient.hpp"
#include "cuspk3/resgraph.hpp"
#include "oracles.hpp"

using namespace cuspk3;

namespace {

const FieldElem zero = FieldElem::zero();
const FieldElem one = FieldElem::one();

MPoly P(const std::string& s) { return MPoly::parse(s); }

// Collects failed sub-checks; a criterion passes when none failed.
struct Log {
  std::vector<std::string> failed;
  std::string info;
  void check(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
};

std::vector<std::pair<FieldElem, FieldElem>> nonzero_pairs(int level) {
  std::vector<std::pair<FieldElem, FieldElem>> out;
  for (auto r : elements(level))
    for (auto s : elements(level))
      if (!(r.is_zero() && s.is_zero())) out.emplace_back(r, s);
  return out;
}

std::vector<int> genus_of(const ResGraph& g) {
  std::vector<int> out;
  for (const auto& v : g.vertices()) out.push_back(v.genus);
  return out;
}

// The F16 sweep is shared by criteria 7, 9 and 11.
const SweepReport& f16_sweep() {
  static const SweepReport s = sweep(4, 0, true);
  return s;
}

void action_identity(Log& log) {
  log.check(is_p_closed(fixed_chart().delta), "fixed chart delta^2 != 0");
  log.check(is_p_closed(quad_chart().delta), "quad chart delta^2 != 0");
}

void invariant_rings(Log& log) {
  struct Want {
    Chart chart;
    std::string a, b, c, relation;
  };
  std::vector<Want> wants{
      {fixed_chart(), "x^2", "y^2", "x*(y^4 + s*y^2) + y*(x^4 + r*x^2)", "c^2 + a*(b^4 + s^2*b^2) + b*(a^4 + r^2*a^2)"},
      {quad_chart(), "u^2", "v^2", "(1 + s*v^2)*u^3 + (1 + r*u^2)*v^3", "c^2 + a^3 + b^3 + s^2*a^3*b^2 + r^2*a^2*b^3"}};
  for (const auto& w : wants) {
    KernelData k = invariant_kernel_rank4(w.chart);
    log.check(verify_relation(w.chart, k), w.chart.name + ": relation");
    log.check(k.a == P(w.a) && k.b == P(w.b) && k.c == P(w.c), w.chart.name + ": generators");
    log.check(k.relation == P(w.relation), w.chart.name + ": relation polynomial");
  }
}

void classification(Log& log) {
  int n = 0;
  for (auto [r, s] : nonzero_pairs(2)) {
    BlowupResult q = blowup_classify(quad_point_equation({r, s}, 2), zero, zero);
    log.check(q.rdp && q.type.name() == "D4", "quad point over F4 " + r.to_string() + "," + s.to_string());
    ++n;
  }
  for (auto [r, s] : nonzero_pairs(1)) {
    BlowupResult q = blowup_classify(quad_point_equation({r, s}, 1), zero, zero);
    log.check(q.rdp && q.type.name() == "B3", "quad point over F2 " + r.to_string() + "," + s.to_string());
    ++n;
  }
  for (auto r : elements(2))
    for (auto s : elements(2)) {
      CoverEq eq = fixed_point_equation({r, s}, 2);
      for (const auto& fp : fixed_points({r, s})) {
        BlowupResult res = blowup_classify(eq, fp.a, fp.b);
        std::string at = "fixed point of " + r.to_string() + "," + s.to_string();
        if (!r.is_zero() && !s.is_zero())
          log.check(res.rdp && res.type.name() == "D4", at);
        else if (!r.is_zero() || !s.is_zero())
          log.check(res.rdp && res.type.name() == "D8", at);
        else
          log.check(!res.rdp && res.elliptic19_shape, at);
        ++n;
      }
    }
  log.info = std::to_string(n) + " points";
}

void fundamental_cycles(Log& log) {
  std::vector<SingularityType> templates;
  for (int n = 1; n <= 9; ++n) templates.push_back({Family::A, n, false});
  for (int n = 4; n <= 9; ++n) templates.push_back({Family::D, n, false});
  for (int n = 6; n <= 8; ++n) templates.push_back({Family::E, n, false});
  templates.push_back({Family::B, 3, true});
  templates.push_back({Family::G, 2, true});
  templates.push_back({Family::Elliptic19, 6, false});
  templates.push_back({Family::Elliptic19, 6, true});
  int n = 0;
  for (const auto& t : templates) {
    ResGraph g = dynkin_graph(t);
    if (g.size() > 9) continue;
    auto brute = oracle::minimal_anti_nef(g.matrix(), {}, 8);
    log.check(brute && fundamental_cycle(g) == *brute, t.name());
    ++n;
  }
  // Extended diagrams: the minimal anti-nef cycle is the fiber itself.
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 1}, {Family::A, 2}, {Family::A, 5}, {Family::A, 8},
                                                        {Family::D, 4}, {Family::D, 6}, {Family::D, 8}, {Family::E, 6},
                                                        {Family::E, 7}, {Family::E, 8}}) {
    ResGraph g = extended_dynkin_graph(f, r);
    auto brute = oracle::minimal_anti_nef(g.matrix(), {}, 8);
    auto m = extended_multiplicities(f, r);
    log.check(brute && *brute == Cycle(m.begin(), m.end()), "extended " + std::to_string(r));
    ++n;
  }
  ResGraph d4 = dynkin_graph({Family::D, 4, false});
  Cycle z = fundamental_cycle(d4);
  std::multiset<long long> coeffs(z.begin(), z.end());
  int center = -1;
  for (int i = 0; i < d4.size(); ++i)
    if (d4.valence(i) == 3) center = i;
  log.check(center >= 0 && z[center] == 2 && coeffs == std::multiset<long long>{1, 1, 1, 2}, "D4 cycle (2;1,1,1)");
  log.info = std::to_string(n) + " graphs";
}

void table_replays(Log& log) {
  for (const char* which : {"d8", "e8"}) {
    ReplayReport rep = replay_table(load_blowup_table(which));
    log.check(rep.rows.size() == 6, std::string(which) + ": row count");
    for (const auto& row : rep.rows)
      log.check(row.ok(), std::string(which) + ": row " + std::to_string(row.stage));
    log.check(rep.ends_resolved, std::string(which) + ": curves left contracted");
  }
  log.info = "12 rows";
}

void specialization(Log& log) {
  SpecializationReport rep = specialization_check(load_specialization());
  log.check(rep.gram_ok, "Gram matrices differ");
  log.check(rep.fiber_ok, "fiber cycle not preserved");
  log.check(rep.source_gram.size() == 9, "source lattice is not 9-dimensional");
}

void artin(Log& log) {
  FieldElem w = FieldElem::omega();
  for (auto [r, s] : std::vector<std::pair<FieldElem, FieldElem>>{{zero, one}, {one, zero}, {one, one}, {one, w}})
    log.check(surface_report(make_params(2, r, s)).sigma0 == 1, "sigma0 at " + r.to_string() + "," + s.to_string());
  for (auto t : elements(4))
    if (!t.in_subfield(2))
      log.check(surface_report(make_params(4, one, t)).sigma0 == 2, "sigma0 at 1," + t.to_string());
  auto start = std::chrono::steady_clock::now();
  const SweepReport& sw = f16_sweep();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log.check(sw.rows.size() == 255, "sweep size");
  log.check(sw.exceptions() == 0, std::to_string(sw.exceptions()) + " sweep exceptions");
  for (const auto& row : sw.rows) log.check(row.ok(), "sweep row " + row.r.to_string() + "," + row.s.to_string());
  log.check(secs < 30, "sweep took too long");
  std::ostringstream os;
  os << "sweep 255 pairs in " << secs << " s";
  log.info = os.str();
}

// alpha^4 = alpha, r alpha^2 = s alpha, beta^2 (beta^2 + r) = 0 over F16
// with masks multiplied in F2[x]/(x^4+x+1).
int brute_points(unsigned r, unsigned s) {
  auto mul = [](unsigned a, unsigned b) { return oracle::clmul_mod(a, b, 0x13); };
  int alphas = 0, betas = 0;
  for (unsigned a = 0; a < 16; ++a) {
    unsigned a2 = mul(a, a);
    if (mul(a2, a2) == a && mul(r, a2) == mul(s, a)) ++alphas;
  }
  for (unsigned b = 0; b < 16; ++b) {
    unsigned b2 = mul(b, b);
    if (mul(b2, b2 ^ r) == 0) ++betas;
  }
  return alphas * betas;
}

void rational_points_check(Log& log) {
  std::map<int, int> hist;
  for (auto [r, s] : nonzero_pairs(4)) {
    RationalPoints p = rational_points(make_params(4, r, s));
    int want = brute_points(r.mask(4), s.mask(4));
    log.check(p.count == want, "points at " + r.to_string() + "," + s.to_string());
    log.check(p.count == 1 || p.count == 2 || p.count == 4, "count outside {1,2,4}");
    ++hist[p.count];
  }
  std::ostringstream os;
  for (auto [c, k] : hist) os << c << ":" << k << " ";
  log.info = os.str();
}

void picard(Log& log) {
  for (const auto& row : f16_sweep().rows) {
    if (!row.report) {
      log.check(false, "missing report");
      continue;
    }
    log.check(row.report->exceptional_components == 20 && row.report->rho == 22,
              "report at " + row.r.to_string() + "," + row.s.to_string());
  }
  // The twisted configuration over F2.
  auto fibers = fiber_catalog(make_params(1, one, one));
  std::vector<int> comps;
  for (const auto& f : fibers) comps.push_back(f.components);
  Inventory inv = singularity_inventory(make_params(1, one, one));
  log.check(inv.exceptional_components() == 19, "twisted configuration has 19 curves");
  log.check(picard_tate_shioda(comps) == 21, "twisted rho != 21");
}

void elliptic_genus(Log& log) {
  ResGraph e = elliptic19_graph();
  log.check(cycle_pa(e, fundamental_cycle(e)) == 1, "p_a of the elliptic fundamental cycle");
  log.check(oracle::max_pa(e.matrix(), genus_of(e), 4) == 1, "max p_a oracle on the elliptic graph");
  std::vector<SingularityType> ade;
  for (int n = 1; n <= 8; ++n) ade.push_back({Family::A, n, false});
  for (int n = 4; n <= 8; ++n) ade.push_back({Family::D, n, false});
  for (int n = 6; n <= 8; ++n) ade.push_back({Family::E, n, false});
  for (const auto& t : ade) {
    ResGraph g = dynkin_graph(t);
    log.check(cycle_pa(g, fundamental_cycle(g)) == 0, t.name() + " p_a");
    log.check(oracle::max_pa(g.matrix(), genus_of(g), 4) == 0, t.name() + " max p_a");
  }
}

void rescaling(Log& log) {
  log.check(rescale_check(), "t^6 identity");
  std::map<std::pair<FieldElem, FieldElem>, const SurfaceReport*> by;
  for (const auto& row : f16_sweep().rows)
    if (row.report) by[{row.r, row.s}] = &*row.report;
  int n = 0;
  for (const auto& [rs, rep] : by)
    for (auto t : nonzero_elements(4)) {
      auto it = by.find({t * t * rs.first, t * t * rs.second});
      log.check(it != by.end() && reports_agree(*rep, *it->second), "rescaled report at " + rs.first.to_string());
      ++n;
    }
  log.info = std::to_string(n) + " pairs compared";
}

void lie_algebra(Log& log) {
  RLieAlg g = cusp_lie_algebra();
  AxiomReport ax = verify_pmap_axioms(g, 2);
  log.check(ax.ok(), "axiom failure: " + ax.first_failure);
  log.check(ax.exhaustive, "not exhaustive");
  // The cone is the subspace without a u D_u component: 4^3 vectors.
  auto cone = square_zero_cone(g, 2);
  std::set<std::string> got, want;
  for (const auto& v : cone) got.insert(vec_to_string(v));
  for (const auto& v : all_vectors(g.dim(), 2))
    if (v[2].is_zero()) want.insert(vec_to_string(v));
  log.check(got == want && want.size() == 64, "square-zero cone");
  log.info = std::to_string(ax.pairs_tested) + " pairs, cone " + std::to_string(cone.size());
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Log&)> run;
  };
  std::vector<Criterion> criteria{
      {"action identity", action_identity},     {"invariant rings", invariant_rings},
      {"singularity classification", classification}, {"fundamental cycles", fundamental_cycles},
      {"table replays", table_replays},         {"specialization", specialization},
      {"Artin invariants", artin},              {"rational points", rational_points_check},
      {"Picard numbers", picard},               {"elliptic genus", elliptic_genus},
      {"Weierstrass rescaling", rescaling},     {"Lie algebra", lie_algebra},
  };
  int failed = 0;
  auto total = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Log log;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(log);
    } catch (const std::exception& e) {
      log.failed.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = log.failed.empty();
    failed += !ok;
    std::printf("%s %2zu %-28s %7.3f s  %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                ok ? log.info.c_str() : log.failed.front().c_str());
    for (std::size_t j = 1; j < log.failed.size() && j < 5; ++j) std::printf("          %s\n", log.failed[j].c_str());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - total).count();
  std::printf("%d/%zu criteria passed in %.3f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
