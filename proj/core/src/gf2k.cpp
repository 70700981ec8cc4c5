#include "cuspk3/gf2k.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

#include "cuspk3/error.hpp"

namespace cuspk3 {
namespace {

// x^8 + x^4 + x^3 + x^2 + 1 is primitive, so x (=2) generates F256^*.
constexpr unsigned kModulus256 = 0x11D;
// F16 = F2[x]/(x^4+x+1), F4 = F2[x]/(x^2+x+1).
constexpr unsigned kModulus16 = 0x13;
constexpr unsigned kModulus4 = 0x7;

std::uint8_t slow_mul256(std::uint8_t a, std::uint8_t b) {
  unsigned acc = 0, x = a;
  for (int i = 0; i < 8; ++i) {
    if (b >> i & 1) acc ^= x;
    x <<= 1;
    if (x & 0x100) x ^= kModulus256;
  }
  return static_cast<std::uint8_t>(acc);
}

struct Tables {
  std::array<std::uint8_t, 512> exp{};
  std::array<int, 256> log{};
  // embed[k][mask] is the F256 image of the level-k element with that mask.
  std::array<std::array<std::uint8_t, 256>, 9> embed{};
  // back[k][raw] is the level-k mask of raw, or -1 if raw is not in F_{2^k}.
  std::array<std::array<int, 256>, 9> back{};

  Tables() {
    unsigned x = 1;
    for (int i = 0; i < 255; ++i) {
      exp[i] = static_cast<std::uint8_t>(x);
      exp[i + 255] = static_cast<std::uint8_t>(x);
      log[x] = i;
      x <<= 1;
      if (x & 0x100) x ^= kModulus256;
    }
    exp[510] = exp[0];
    exp[511] = exp[1];
    log[0] = -1;

    // theta16: smallest root in F256 of x^4+x+1.
    std::uint8_t theta16 = 0;
    for (unsigned c = 2; c < 256; ++c) {
      auto y = static_cast<std::uint8_t>(c);
      auto y2 = slow_mul256(y, y);
      auto y4 = slow_mul256(y2, y2);
      if ((y4 ^ y ^ 1) == 0) {
        theta16 = y;
        break;
      }
    }
    fill_from_generator(4, theta16, kModulus16);
    // theta4: image of the smallest F16 mask solving x^2+x+1=0, so the
    // composite F4 -> F16 -> F256 is what we use.
    std::uint8_t theta4 = 0;
    for (unsigned m = 2; m < 16; ++m) {
      auto y = embed[4][m];
      if ((slow_mul256(y, y) ^ y ^ 1) == 0) {
        theta4 = y;
        break;
      }
    }
    fill_from_generator(2, theta4, kModulus4);
    for (auto& row : back) row.fill(-1);
    for (int k : kLevels) {
      if (k == 1) {
        embed[1][0] = 0;
        embed[1][1] = 1;
      } else if (k == 8) {
        for (unsigned m = 0; m < 256; ++m) embed[8][m] = static_cast<std::uint8_t>(m);
      }
      for (unsigned m = 0; m < (1u << k); ++m) back[k][embed[k][m]] = static_cast<int>(m);
    }
  }

  void fill_from_generator(int k, std::uint8_t theta, unsigned modulus) {
    std::array<std::uint8_t, 9> powers{};
    powers[0] = 1;
    for (int i = 1; i <= k; ++i) powers[i] = slow_mul256(powers[i - 1], theta);
    std::uint8_t at_theta = 0;
    for (int i = 0; i <= k; ++i)
      if (modulus >> i & 1) at_theta ^= powers[i];
    if (at_theta != 0) throw InternalCheckFailed("tower embedding does not respect the modulus");
    for (unsigned m = 0; m < (1u << k); ++m) {
      std::uint8_t acc = 0;
      for (int i = 0; i < k; ++i)
        if (m >> i & 1) acc ^= powers[i];
      embed[k][m] = acc;
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

std::uint8_t mul_raw(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) return 0;
  const auto& t = tables();
  return t.exp[t.log[a] + t.log[b]];
}

void check_level(int k) {
  if (!is_level(k)) throw DomainError("tower level must be one of 1, 2, 4, 8; got " + std::to_string(k));
}

}  // namespace

bool is_level(int k) { return k == 1 || k == 2 || k == 4 || k == 8; }

int parse_level(const std::string& name) {
  if (name == "f2") return 1;
  if (name == "f4") return 2;
  if (name == "f16") return 4;
  if (name == "f256") return 8;
  throw ParseError("unknown field '" + name + "' (expected f2, f4, f16 or f256)");
}

std::string level_name(int k) {
  check_level(k);
  return "f" + std::to_string(1 << k);
}

FieldElem FieldElem::from_mask(int k, unsigned mask) {
  check_level(k);
  if (mask >= (1u << k)) throw DomainError("mask " + std::to_string(mask) + " does not fit in " + level_name(k));
  return FieldElem(k, tables().embed[k][mask]);
}

FieldElem FieldElem::omega() { return from_mask(2, 2); }

unsigned FieldElem::mask(int k) const {
  check_level(k);
  int m = tables().back[k][v_];
  if (m < 0) throw DomainError("element " + std::to_string(v_) + " is not in " + level_name(k));
  return static_cast<unsigned>(m);
}

int FieldElem::min_level() const {
  for (int k : kLevels)
    if (tables().back[k][v_] >= 0) return k;
  return 8;
}

bool FieldElem::in_subfield(int k) const {
  check_level(k);
  return tables().back[k][v_] >= 0;
}

FieldElem FieldElem::at_level(int k) const {
  if (!in_subfield(k)) throw DomainError("element does not lie in " + level_name(k));
  return FieldElem(k, v_);
}

FieldElem FieldElem::inv() const {
  if (v_ == 0) throw DomainError("inverse of zero");
  const auto& t = tables();
  return FieldElem(level_, t.exp[(255 - t.log[v_]) % 255]);
}

FieldElem FieldElem::pow(long long e) const {
  if (v_ == 0) {
    if (e < 0) throw DomainError("negative power of zero");
    return e == 0 ? FieldElem(level_, 1) : *this;
  }
  const auto& t = tables();
  long long l = (static_cast<long long>(t.log[v_]) * (e % 255)) % 255;
  if (l < 0) l += 255;
  return FieldElem(level_, t.exp[l]);
}

FieldElem FieldElem::sqrt() const {
  // Frobenius has order 8 on F256, so x^(2^7) is the inverse of squaring.
  std::uint8_t y = v_;
  for (int i = 0; i < 7; ++i) y = mul_raw(y, y);
  return FieldElem(level_, y);
}

FieldElem operator+(FieldElem a, FieldElem b) {
  return FieldElem(a.level_ > b.level_ ? a.level_ : b.level_, static_cast<std::uint8_t>(a.v_ ^ b.v_));
}

FieldElem operator*(FieldElem a, FieldElem b) {
  return FieldElem(a.level_ > b.level_ ? a.level_ : b.level_, mul_raw(a.v_, b.v_));
}

std::string FieldElem::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%x@%s", mask(), level_name(level_).c_str());
  return buf;
}

std::vector<FieldElem> elements(int k) {
  check_level(k);
  std::vector<FieldElem> out;
  out.reserve(1u << k);
  for (unsigned m = 0; m < (1u << k); ++m) out.push_back(FieldElem::from_mask(k, m));
  return out;
}

std::vector<FieldElem> nonzero_elements(int k) {
  auto all = elements(k);
  all.erase(all.begin());
  return all;
}

bool in_P1F4(FieldElem r, FieldElem s) {
  if (r.is_zero() && s.is_zero()) throw DomainError("(0:0) is not a point of P^1");
  if (s.is_zero()) return true;
  return (r / s).in_subfield(2);
}

FieldElem parse_field_elem(const std::string& text, int k) {
  check_level(k);
  if (text == "omega" || text == "w") {
    if (k < 2) throw DomainError("omega is not in f2");
    return FieldElem::omega().at_level(k);
  }
  // Hexadecimal mask, "0x" prefix optional.
  std::string digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) digits = digits.substr(2);
  if (digits.empty() || digits.size() > 8 ||
      !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isxdigit(c); }))
    throw ParseError("bad field element '" + text + "'");
  unsigned long v = std::stoul(digits, nullptr, 16);
  if (v >= (1ul << k)) throw DomainError("mask " + text + " does not fit in " + level_name(k));
  return FieldElem::from_mask(k, static_cast<unsigned>(v));
}

}  // namespace cuspk3
