// Arithmetic in the tower F2 < F4 < F16 < F256.
//
// Every element is stored by its image in F256 = F2[x]/(x^8+x^4+x^3+x^2+1),
// together with the smallest tower level it was declared at.  Smaller fields
// are embedded once and for all, so mixing levels is harmless: the result of
// an operation lives at the larger of the two levels.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cuspk3 {

// Tower levels are the exponents k in F_{2^k}.
inline constexpr int kLevels[] = {1, 2, 4, 8};
bool is_level(int k);
// "f2", "f4", "f16", "f256" -> 1, 2, 4, 8.
int parse_level(const std::string& name);
std::string level_name(int k);

class FieldElem {
 public:
  FieldElem() = default;

  // Element of F_{2^k} given by its coefficient mask in the level-k basis
  // (bit i is the coefficient of theta_k^i).  Throws if the mask does not fit.
  static FieldElem from_mask(int k, unsigned mask);
  static FieldElem zero(int k = 1) { return FieldElem(k, 0); }
  static FieldElem one(int k = 1) { return FieldElem(k, 1); }
  // A generator of F4^*, i.e. a root of x^2+x+1 (mask 0b10 at level 2).
  static FieldElem omega();

  int level() const { return level_; }
  // Raw F256 value; stable across the library, used as a sort key.
  std::uint8_t raw() const { return v_; }
  // Coefficient mask in the level-k basis.  Throws if the element is not in F_{2^k}.
  unsigned mask(int k) const;
  unsigned mask() const { return mask(level_); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  // Smallest tower level containing this element.
  int min_level() const;
  bool in_subfield(int k) const;
  // Same element, relabelled at level k (must contain it).
  FieldElem at_level(int k) const;

  FieldElem inv() const;
  FieldElem pow(long long e) const;
  FieldElem frobenius() const { return *this * *this; }
  FieldElem sqrt() const;

  friend FieldElem operator+(FieldElem a, FieldElem b);
  friend FieldElem operator-(FieldElem a, FieldElem b) { return a + b; }
  friend FieldElem operator*(FieldElem a, FieldElem b);
  friend FieldElem operator/(FieldElem a, FieldElem b) { return a * b.inv(); }
  FieldElem& operator+=(FieldElem o) { return *this = *this + o; }
  FieldElem& operator*=(FieldElem o) { return *this = *this * o; }

  friend bool operator==(FieldElem a, FieldElem b) { return a.v_ == b.v_; }
  friend bool operator<(FieldElem a, FieldElem b) { return a.v_ < b.v_; }

  // "0x3@f16" style; see FORMATS.md.
  std::string to_string() const;

 private:
  FieldElem(int k, std::uint8_t v) : level_(static_cast<std::uint8_t>(k)), v_(v) {}
  std::uint8_t level_ = 1;
  std::uint8_t v_ = 0;
};

// All 2^k elements of F_{2^k}, ordered by mask.
std::vector<FieldElem> elements(int k);
std::vector<FieldElem> nonzero_elements(int k);

// Whether the point (r:s) of P^1 is F4-rational.  Throws on (0,0).
bool in_P1F4(FieldElem r, FieldElem s);

// Parse "0x1f", "3", or "omega"; the level decides how the mask is read.
FieldElem parse_field_elem(const std::string& text, int k);

}  // namespace cuspk3
