// Chart-level calculus of the alpha_2-action on C x C: fixed ideals and
// points, invariant rings of rank-4 charts, orbit-ideal invariance, and the
// normalization that trivializes deformations of c^2 + a^3 + b^3.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cuspk3/mpoly.hpp"

namespace cuspk3 {

struct ActionParams {
  FieldElem r;
  FieldElem s;
};

// One affine chart of C x C with the derivation describing the action.
// The chart ring is free of rank 4 over its subring of squares, with basis
// 1, X, Y, XY.
struct Chart {
  std::string name;
  std::vector<std::string> vars;  // the two chart variables
  Derivation delta;
  std::vector<MPoly> generators;  // algebra generators of the chart ring
  MPoly odd_x, odd_y;             // X and Y
};

// Chart at infinity, x = u^-1, y = v^-1: delta = (x^4+r x^2) D_x + (y^4+s y^2) D_y.
// Without params, r and s stay symbolic variables.
Chart fixed_chart(const std::optional<ActionParams>& params = std::nullopt);
// Chart through the quadruple point: A = R[u^2,u^3,v^2,v^3],
// delta = (u^-2 + r) D_u + (v^-2 + s) D_v.
Chart quad_chart(const std::optional<ActionParams>& params = std::nullopt);
// Chart on the polynomial ring in x, y with an arbitrary derivation.
Chart plain_chart(const std::string& name, const Derivation& delta, const std::string& x = "x",
                  const std::string& y = "y");

// Nonzero delta(g) over the generators; {1} when one of them is a unit.
std::vector<MPoly> fixed_ideal(const Chart& chart);

struct FixedPoint {
  FieldElem x, y;  // chart coordinates (u^-1, v^-1)
  FieldElem a, b;  // their squares, coordinates on the quotient
};
// Reduced fixed points in the chart at infinity: x in {0, sqrt r}, y in {0, sqrt s}.
std::vector<FixedPoint> fixed_points(const ActionParams& params);

struct KernelData {
  MPoly a, b, c;    // invariants in chart variables
  MPoly relation;   // in the variables a, b, c (and any parameters)
  MPoly f, g;       // delta(X), delta(Y)
};
KernelData invariant_kernel_rank4(const Chart& chart);

// Substituting a, b, c into the relation gives 0, and delta kills a, b, c.
bool verify_relation(const Chart& chart, const KernelData& data);

using Matrix4 = std::array<std::array<MPoly, 4>, 4>;
// M[i][j] = coefficient of basis_i in delta(basis_j), basis (1, X, Y, XY).
Matrix4 cokernel_matrix(const Chart& chart);

enum class Membership { Invariant, NotInvariant, Inconclusive };
std::string to_string(Membership m);

struct InvarianceResult {
  Membership verdict = Membership::Inconclusive;
  // For NotInvariant: the generator whose image escapes and a witness point
  // of V(I) at which that image does not vanish.
  std::optional<MPoly> escaping;
  std::optional<Assignment> witness;
};

// Is the ideal generated by `gens` in k[vars]/(relations) stable under delta?
// Membership of each delta(g) is decided by linear algebra on monomials of
// degree <= degree_bound; failures are certified by a point of V(I) over the
// coefficient field, otherwise reported as Inconclusive.
InvarianceResult ideal_invariant_check(const std::vector<MPoly>& gens, const Derivation& delta,
                                       int degree_bound = 12, const std::vector<MPoly>& relations = {});

// The orbit ideal through (u^2 = 0, v^-1 = lambda) in the quadruple-point
// chart, written in k[p,q,y]/(p^3+q^2) with p = u^2, q = u^3, y = v^-1.
struct OrbitIdealInstance {
  std::vector<MPoly> gens;
  Derivation delta;
  std::vector<MPoly> relations;
};
OrbitIdealInstance orbit_ideal(const ActionParams& params, FieldElem lambda);

struct Substitution {
  std::string var;  // "a" or "b"
  MPoly value;      // var is replaced by value
};
// Inductive coordinate changes removing the perturbation g of c^2+a^3+b^3
// up to total degree N.  g must lie in the ideal (a^3 b^2, a^2 b^3).
std::vector<Substitution> deformation_normalize(const MPoly& g, int N);

}  // namespace cuspk3
