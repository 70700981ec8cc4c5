// Singularities of inseparable double covers c^2 = f(a,b) in characteristic 2,
// resolved by repeated point blowups with the exceptional square factor
// divided out after each step.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "cuspk3/mpoly.hpp"
#include "cuspk3/quotient.hpp"
#include "cuspk3/resgraph.hpp"

namespace cuspk3 {

// c^2 = f(a, b).  `level` is the ground field F_{2^level}; every point and
// curve is computed over F256 and then grouped into Frobenius orbits.
struct CoverEq {
  MPoly f;
  int level = 8;
};

// Branch polynomials read off the invariant-ring relation of each chart.
CoverEq quad_point_equation(const ActionParams& p, int level);   // a^3+b^3+s^2a^3b^2+r^2a^2b^3
CoverEq fixed_point_equation(const ActionParams& p, int level);  // a(b^4+s^2b^2)+b(a^4+r^2a^2)

struct CoverPoint {
  FieldElem a, b;  // orbit representative (smallest raw values)
  int degree = 1;  // residue degree over the ground field
  std::vector<std::pair<FieldElem, FieldElem>> orbit;
};

// Points of F256^2 where both partials of f vanish, grouped into orbits.
// Throws DomainError if the singular locus contains a curve.
std::vector<CoverPoint> singular_points(const CoverEq& eq);

// One visited point of the recursion.
struct BlowupNode {
  std::string address;  // "" for the start point, then "/x=<hex>" or "/y" per step
  int depth = 0;
  std::string branch;   // local branch after translation, odd part only
  int order = 0;        // order of that branch
  bool a1 = false;
  std::string vertex;   // id of the curve born here
  std::vector<std::string> curves_through;  // older curves passing through the point
};

struct BlowupResult {
  ResGraph geometric;  // all curves over F256, each a (-2)-vertex
  ResGraph graph;      // Frobenius orbits folded into deg labels
  SingularityType type;
  bool rdp = false;
  std::string note;    // reason when rdp is false
  int generations = 0; // number of non-A1 blowup generations
  bool elliptic19_shape = false;  // folded graph has the shape of the 19_0 star
  std::vector<BlowupNode> nodes;
  std::map<std::string, std::string> vertex_address;
};

// Resolve the singular point (a0, b0).  Throws DomainError if the point is
// not singular, if a curve of singular points passes through it, or if some
// point of the resolution is not defined over F256.
BlowupResult blowup_classify(const CoverEq& eq, FieldElem a0, FieldElem b0, int max_depth = 6);

}  // namespace cuspk3
