// Sparse multivariate (Laurent) polynomials over the F256 tower.
//
// Variables are named; a polynomial only lists the variables that actually
// occur, sorted by name.  Parameters such as r, s, t are ordinary variables
// in symbolic computations and field constants in numeric ones.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cuspk3/gf2k.hpp"

namespace cuspk3 {

using Exps = std::vector<int>;
using Assignment = std::map<std::string, FieldElem>;

class MPoly {
 public:
  MPoly() = default;
  MPoly(FieldElem c);  // NOLINT: constants convert implicitly

  static MPoly constant(FieldElem c) { return MPoly(c); }
  static MPoly var(const std::string& name, int power = 1);
  // c * prod name^e
  static MPoly monomial(FieldElem c, const std::map<std::string, int>& powers);
  // Parse the text syntax of FORMATS.md; numeric constants are masks at level k.
  static MPoly parse(const std::string& text, int k = 8);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exps, FieldElem>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  bool has_var(const std::string& name) const;
  bool has_negative_exponents() const;
  FieldElem constant_term() const;
  // Coefficient of the monomial with the given exponents (missing names are 0).
  FieldElem coeff(const std::map<std::string, int>& powers) const;
  // Largest tower level among the stored coefficients.
  int coeff_level() const;

  int degree_in(const std::string& name) const;      // max exponent, 0 if absent
  int min_degree_in(const std::string& name) const;  // min exponent, 0 if absent
  int total_degree() const;                          // -1 for the zero polynomial
  int order() const;                                 // min total degree, -1 for zero

  // Lex leading term with variables compared in name order.
  std::pair<Exps, FieldElem> leading_term() const;

  // f as a polynomial in `name`: exponent -> coefficient.
  std::map<int, MPoly> as_univariate(const std::string& name) const;

  MPoly derivative(const std::string& name) const;
  MPoly substitute(const std::string& name, const MPoly& value) const;
  MPoly substitute(const std::map<std::string, MPoly>& values) const;
  MPoly evaluate_partial(const Assignment& values) const;
  // Throws if some variable is left unassigned.
  FieldElem evaluate(const Assignment& values) const;
  MPoly rename(const std::map<std::string, std::string>& names) const;

  MPoly pow(int e) const;
  // Square root of a polynomial all of whose exponents are even; nullopt otherwise.
  std::optional<MPoly> sqrt() const;
  // Multiply by prod name^e (negative e allowed).
  MPoly shift(const std::map<std::string, int>& powers) const;
  MPoly scaled(FieldElem c) const;
  // Divide by the coefficient of the lex leading term.
  MPoly monic() const;

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  friend bool operator==(const MPoly& a, const MPoly& b);
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  // Masks printed at `k` (default: largest coefficient level).
  std::string to_string(int k = 0) const;

 private:
  MPoly(std::vector<std::string> vars, std::map<Exps, FieldElem> terms);
  void normalize();
  MPoly aligned(const std::vector<std::string>& vars) const;
  int index_of(const std::string& name) const;

  std::vector<std::string> vars_;
  std::map<Exps, FieldElem> terms_;
};

// Exact quotient f / g, or nullopt when g does not divide f.  Both must be
// ordinary polynomials unless g is a single term.
std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g);
// Monic greatest common divisor (0 only if both inputs are 0).
MPoly gcd(const MPoly& f, const MPoly& g);

// f = s^2 * h with h squarefree.  Uses gcd(f, all partials) = s^2, which
// holds in characteristic 2 over a perfect field.
struct SquarefreeSplit {
  MPoly s;
  MPoly h;
};
SquarefreeSplit squarefree_decompose(const MPoly& f, int max_degree = 12);

struct Factorization {
  FieldElem unit;
  std::vector<std::pair<MPoly, int>> factors;  // irreducible, multiplicity
  MPoly product() const;
};
// Univariate or homogeneous bivariate inputs of degree <= 8, factored over F_{2^k}.
Factorization factor_small(const MPoly& f, int k);

// delta = sum_i f_i d/dx_i.  Variables without an entry are constants for delta.
class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(std::map<std::string, MPoly> coeffs) : coeffs_(std::move(coeffs)) {}
  static Derivation parse(const std::map<std::string, std::string>& coeffs, int k = 8);

  const std::map<std::string, MPoly>& coeffs() const { return coeffs_; }
  MPoly coeff(const std::string& name) const;
  std::vector<std::string> ring_vars() const;

  MPoly apply(const MPoly& f) const;
  bool is_zero() const;
  std::string to_string() const;

 private:
  std::map<std::string, MPoly> coeffs_;
};

inline MPoly derivation_apply(const Derivation& d, const MPoly& f) { return d.apply(f); }
// delta(delta(x)) == 0 for every ring variable; enough since delta^2 is again
// a derivation in characteristic 2.
bool is_p_closed(const Derivation& d);

}  // namespace cuspk3
