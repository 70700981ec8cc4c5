// Dense univariate polynomials over F_{2^k}; only what factor_small needs.
#pragma once

#include <utility>
#include <vector>

#include "cuspk3/gf2k.hpp"

namespace cuspk3::detail {

// Coefficients from degree 0 upward, no trailing zeros.
struct UPoly {
  std::vector<FieldElem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0].is_one(); }
  FieldElem lead() const { return c.back(); }
  void trim();
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly mod(const UPoly& a, const UPoly& b);
UPoly monic(const UPoly& a);
UPoly gcd(UPoly a, UPoly b);
UPoly derivative(const UPoly& a);
UPoly x_poly();

// Monic irreducible factors with multiplicities of a nonzero polynomial over F_{2^k}.
std::vector<std::pair<UPoly, int>> factor(const UPoly& f, int k);

}  // namespace cuspk3::detail
