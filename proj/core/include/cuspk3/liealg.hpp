// Restricted Lie algebras over F_{2^k} given by structure constants and the
// values of the p-map on a basis.
#pragma once

#include <string>
#include <vector>

#include "cuspk3/gf2k.hpp"

namespace cuspk3 {

using Vec = std::vector<FieldElem>;

class RLieAlg {
 public:
  RLieAlg() = default;
  // Zero bracket and zero p-map.
  explicit RLieAlg(int dim, std::vector<std::string> basis_names = {});

  int dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return names_; }

  // [e_i, e_j] = value; [e_j, e_i] is set to the same vector (signs vanish in char 2).
  void set_bracket(int i, int j, const Vec& value);
  void set_pmap(int i, const Vec& value);
  const Vec& basis_bracket(int i, int j) const { return c_[i][j]; }
  const Vec& basis_pmap(int i) const { return p_[i]; }

  Vec bracket(const Vec& x, const Vec& y) const;
  // sum x_i^2 e_i^[2] + sum_{i<j} x_i x_j [e_i, e_j]
  Vec pmap(const Vec& x) const;

  Vec basis_vector(int i) const;
  Vec zero() const { return Vec(dim_); }

 private:
  void check(const Vec& x) const;
  void check_index(int i) const;

  int dim_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<Vec>> c_;
  std::vector<Vec> p_;
};

// The algebra a x| b of vector fields u^-2 D_u, D_u, u D_u, u^2 D_u.
RLieAlg cusp_lie_algebra();

struct AxiomReport {
  bool alternating = true;
  bool jacobi = true;
  bool scalar = true;       // (l x)^[2] = l^2 x^[2]
  bool adjoint = true;      // [x^[2], y] = [x, [x, y]]
  bool sum_rule = true;     // (x+y)^[2] = x^[2] + [x,y] + y^[2]
  bool exhaustive = false;  // every pair over the field was tested
  long long pairs_tested = 0;
  std::string first_failure;
  bool ok() const { return alternating && jacobi && scalar && adjoint && sum_rule; }
};

// Exhaustive when q^(2 dim) <= 2^20, otherwise a fixed-seed random sample.
AxiomReport verify_pmap_axioms(const RLieAlg& alg, int k);

// All v over F_{2^k} with v^[2] = 0.  Requires q^dim <= 2^16.
std::vector<Vec> square_zero_cone(const RLieAlg& alg, int k);

// Every vector of F_{2^k}^dim, in mask order (first coordinate fastest).
std::vector<Vec> all_vectors(int dim, int k);

std::string vec_to_string(const Vec& v);

}  // namespace cuspk3
