#include "doctest.h"

#include "cuspk3/error.hpp"
#include "cuspk3/gf2k.hpp"
#include "oracles.hpp"

using namespace cuspk3;

namespace {
FieldElem m(int k, unsigned v) { return FieldElem::from_mask(k, v); }
}  // namespace

TEST_CASE("multiplication agrees with carry-less arithmetic at every level") {
  const std::pair<int, unsigned> moduli[] = {{2, 0x7}, {4, 0x13}, {8, 0x11D}};
  for (auto [k, mod] : moduli)
    for (unsigned a = 0; a < (1u << k); ++a)
      for (unsigned b = 0; b < (1u << k); ++b) {
        FieldElem p = m(k, a) * m(k, b);
        REQUIRE(p.mask(k) == oracle::clmul_mod(a, b, mod));
        REQUIRE((m(k, a) + m(k, b)).mask(k) == (a ^ b));
      }
}

TEST_CASE("field axioms on F256") {
  auto all = elements(8);
  for (auto x : all) {
    CHECK((x + x).is_zero());
    if (!x.is_zero()) CHECK((x * x.inv()).is_one());
    CHECK(x.sqrt() * x.sqrt() == x);
    CHECK(x.pow(256) == x);
  }
  // Frobenius is a bijection.
  std::vector<bool> hit(256, false);
  for (auto x : all) hit[x.frobenius().raw()] = true;
  CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

TEST_CASE("F4 values") {
  FieldElem w = FieldElem::omega();
  CHECK(w.level() == 2);
  CHECK((w * w + w + FieldElem::one()).is_zero());
  CHECK((w * w.pow(2)).is_one());
  CHECK(FieldElem::one().inv().is_one());
  CHECK(FieldElem::zero().sqrt().is_zero());
  CHECK(FieldElem::one().sqrt().is_one());
  // The square table of F4 inverted by hand: omega^2 squares to omega.
  for (auto x : elements(2))
    if ((x * x) == w) CHECK(w.sqrt() == x);
  CHECK(w.sqrt() == w * w);
}

TEST_CASE("subfields are the fixed points of Frobenius powers") {
  for (int k : {1, 2, 4, 8})
    for (auto x : elements(8)) CHECK(x.in_subfield(k) == (x.pow(1LL << k) == x));
  CHECK(elements(4).size() == 16);
  CHECK(nonzero_elements(2).size() == 3);
  for (auto x : elements(4)) CHECK(x.min_level() <= 4);
  CHECK(FieldElem::omega().min_level() == 2);
}

TEST_CASE("levels mix by embedding") {
  FieldElem a = m(4, 0x2), b = m(2, 0x3);
  CHECK((a * b).level() == 4);
  CHECK((a * b).in_subfield(4));
  CHECK(FieldElem::one(1).at_level(8).level() == 8);
  CHECK_THROWS_AS(m(4, 0x2).at_level(2), DomainError);
  CHECK_THROWS_AS(m(2, 4), DomainError);
  CHECK_THROWS_AS(FieldElem::zero().inv(), DomainError);
}

TEST_CASE("P1(F4) rationality against the five points") {
  // (r:s) is F4-rational iff it equals one of (0:1), (1:0), (1:1), (1:w), (1:w^2).
  auto rational = [](FieldElem r, FieldElem s) {
    for (auto t : elements(2)) {
      if ((s + t * r).is_zero() && !r.is_zero()) return true;
    }
    return r.is_zero();
  };
  for (auto r : elements(4))
    for (auto s : elements(4)) {
      if (r.is_zero() && s.is_zero()) continue;
      CHECK(in_P1F4(r, s) == rational(r, s));
    }
  CHECK(in_P1F4(FieldElem::one(), FieldElem::one()));
  CHECK(in_P1F4(FieldElem::zero(), FieldElem::one()));
  CHECK_FALSE(in_P1F4(FieldElem::one(), m(4, 0x2)));
  CHECK_THROWS_AS(in_P1F4(FieldElem::zero(), FieldElem::zero()), DomainError);
}

TEST_CASE("parsing") {
  CHECK(parse_level("f16") == 4);
  CHECK(level_name(8) == "f256");
  CHECK_THROWS(parse_level("f8"));
  CHECK(parse_field_elem("0xb", 4) == m(4, 0xb));
  CHECK(parse_field_elem("3", 2) == m(2, 3));
  CHECK(parse_field_elem("omega", 4) == FieldElem::omega());
  CHECK_THROWS_AS(parse_field_elem("0x10", 4), DomainError);
  CHECK_THROWS_AS(parse_field_elem("zz", 4), ParseError);
  CHECK(parse_field_elem("1d", 8) == m(8, 0x1d));
  CHECK(parse_field_elem("10", 8) == m(8, 0x10));
  CHECK_THROWS_AS(parse_field_elem("-1", 4), ParseError);
  CHECK_THROWS_AS(parse_field_elem("0x", 4), ParseError);
  CHECK(m(4, 0x3).to_string() == "0x3@f16");
}
