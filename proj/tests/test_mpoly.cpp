#include "doctest.h"

#include <random>

#include "cuspk3/error.hpp"
#include "cuspk3/mpoly.hpp"

using namespace cuspk3;

namespace {

MPoly P(const std::string& s, int k = 8) { return MPoly::parse(s, k); }

MPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int terms, int maxdeg, int k) {
  std::uniform_int_distribution<int> e(0, maxdeg);
  std::uniform_int_distribution<unsigned> c(1, (1u << k) - 1);
  MPoly out;
  for (int t = 0; t < terms; ++t) {
    std::map<std::string, int> pw;
    for (const auto& v : vars) pw[v] = e(rng);
    out += MPoly::monomial(FieldElem::from_mask(k, c(rng)), pw);
  }
  return out;
}

Assignment random_point(std::mt19937& rng, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<unsigned> c(0, 255);
  Assignment a;
  for (const auto& v : vars) a[v] = FieldElem::from_mask(8, c(rng));
  return a;
}

}  // namespace

TEST_CASE("ring operations commute with evaluation") {
  std::mt19937 rng(7);
  std::vector<std::string> vars{"a", "b", "c"};
  for (int round = 0; round < 200; ++round) {
    MPoly f = random_poly(rng, vars, 5, 4, 8), g = random_poly(rng, vars, 4, 3, 8);
    Assignment p = random_point(rng, vars);
    FieldElem fv = f.evaluate(p), gv = g.evaluate(p);
    REQUIRE((f + g).evaluate(p) == fv + gv);
    REQUIRE((f * g).evaluate(p) == fv * gv);
    REQUIRE(f.pow(3).evaluate(p) == fv.pow(3));
    REQUIRE((f + f).is_zero());
  }
}

TEST_CASE("no stored zero coefficients and normalized variables") {
  MPoly f = P("a*b + a*b + c");
  CHECK(f == P("c"));
  CHECK(f.vars() == std::vector<std::string>{"c"});
  for (const auto& [e, c] : P("x^2*y + omega*x + 3*y^5", 4).terms()) CHECK(!c.is_zero());
  CHECK(P("x - x").is_zero());
}

TEST_CASE("squaring is Frobenius on coefficients and exponents") {
  std::mt19937 rng(11);
  for (int round = 0; round < 50; ++round) {
    MPoly f = random_poly(rng, {"x", "y"}, 6, 5, 8);
    MPoly sq;
    for (const auto& [e, c] : f.terms()) {
      std::map<std::string, int> pw;
      for (std::size_t i = 0; i < e.size(); ++i) pw[f.vars()[i]] = 2 * e[i];
      sq += MPoly::monomial(c * c, pw);
    }
    REQUIRE(f.pow(2) == sq);
    REQUIRE(sq.sqrt().has_value());
    REQUIRE(*sq.sqrt() == f);
  }
  CHECK_FALSE(P("x^2 + x").sqrt().has_value());
}

TEST_CASE("parse and print round trip") {
  for (const char* s : {"x^4 + r*x^2", "c^2 + a^3 + b^3 + s^2*a^3*b^2 + r^2*a^2*b^3", "0x1d*u^-2 + v", "1"}) {
    MPoly f = P(s);
    CHECK(P(f.to_string()) == f);
  }
  CHECK(P("(x+y)^2") == P("x^2 + y^2"));
  CHECK(P("-x + x") == MPoly());
  CHECK(P("omega^3", 2) == MPoly(FieldElem::one()));
  CHECK_THROWS_AS(P("x +"), ParseError);
  CHECK_THROWS_AS(P("x ^ y"), ParseError);
  CHECK_THROWS_AS(P("0x5", 2), DomainError);
}

TEST_CASE("degrees, coefficients and substitution") {
  MPoly f = P("a^3*b^2 + a*b + b^7");
  CHECK(f.degree_in("a") == 3);
  CHECK(f.min_degree_in("b") == 1);
  CHECK(f.total_degree() == 7);
  CHECK(f.order() == 2);
  CHECK(f.coeff({{"a", 1}, {"b", 1}}).is_one());
  CHECK(f.coeff({{"a", 2}}).is_zero());
  CHECK(f.substitute("b", P("a")) == P("a^5 + a^2 + a^7"));
  // Simultaneous substitution swaps without interference.
  CHECK(P("a + b^2").substitute(std::map<std::string, MPoly>{{"a", P("b")}, {"b", P("a")}}) == P("b + a^2"));
  CHECK(f.rename({{"a", "x"}}) == P("x^3*b^2 + x*b + b^7"));
  CHECK(P("x*u^-2").shift({{"u", 2}}) == P("x"));
}

TEST_CASE("derivatives and derivations") {
  CHECK(P("x^2").derivative("x").is_zero());
  CHECK(P("x^3 + x*y").derivative("x") == P("x^2 + y"));
  Derivation dx(std::map<std::string, MPoly>{{"x", P("1")}});
  CHECK(dx.apply(P("x^2")).is_zero());
  Derivation d = Derivation::parse({{"x", "x^4 + r*x^2"}, {"y", "y^4 + s*y^2"}});
  CHECK(d.apply(P("x")) == P("x^4 + r*x^2"));
  CHECK(is_p_closed(d));
  CHECK(is_p_closed(dx));
  CHECK_FALSE(is_p_closed(Derivation(std::map<std::string, MPoly>{{"x", P("x")}})));

  std::mt19937 rng(3);
  for (int round = 0; round < 50; ++round) {
    MPoly f = random_poly(rng, {"x", "y"}, 4, 4, 8), g = random_poly(rng, {"x", "y"}, 4, 4, 8);
    REQUIRE(d.apply(f * g) == f * d.apply(g) + g * d.apply(f));
    REQUIRE(d.apply(f.pow(2)).is_zero());
  }
}

TEST_CASE("exact division and gcd") {
  MPoly f = P("x^2 + x*y"), g = P("x + y");
  CHECK(divide_exact(f, g) == P("x"));
  CHECK_FALSE(divide_exact(P("x^2 + y"), g).has_value());
  CHECK(divide_exact(P("a^5*b"), P("a^2")) == P("a^3*b"));
  CHECK_THROWS_AS(divide_exact(f, MPoly()), DomainError);

  std::mt19937 rng(5);
  for (int round = 0; round < 30; ++round) {
    MPoly a = random_poly(rng, {"x", "y"}, 3, 3, 2), b = random_poly(rng, {"x", "y"}, 3, 3, 2);
    MPoly c = random_poly(rng, {"x", "y"}, 2, 2, 2);
    if (c.is_constant() || a.is_zero() || b.is_zero()) continue;
    MPoly h = gcd(a * c, b * c);
    REQUIRE(divide_exact(a * c, h).has_value());
    REQUIRE(divide_exact(b * c, h).has_value());
    REQUIRE(divide_exact(h, c.monic()).has_value());
  }
  CHECK(gcd(P("x^2*y"), P("x*y^3")) == P("x*y"));
  CHECK(gcd(MPoly(), MPoly()).is_zero());
}

TEST_CASE("squarefree decomposition") {
  auto check = [](const MPoly& f, const MPoly& s_expected) {
    SquarefreeSplit sp = squarefree_decompose(f);
    CHECK(sp.s.pow(2) * sp.h == f);
    CHECK(divide_exact(sp.s, s_expected).has_value());
    CHECK(divide_exact(s_expected, sp.s).has_value());
  };
  check(P("x^2*y"), P("x"));
  check(P("(x+y)^2"), P("x+y"));
  check(P("x*y"), P("1"));
  // a^5 t + a^5 t^4 + r^2 a^3 t with r = 1: the square factor is a (so s^2 = a^2).
  check(P("a^5*t + a^5*t^4 + a^3*t"), P("a"));
}

TEST_CASE("small factorizations") {
  auto irreducible = [](const MPoly& g, int k) {
    if (g.total_degree() == 1) return true;
    if (g.total_degree() > 3) return true;  // only low degrees are decided by roots
    const std::string x = g.vars()[0];
    for (auto t : elements(k))
      if (g.evaluate_partial({{x, t}}).evaluate_partial(g.vars().size() > 1 ? Assignment{{g.vars()[1], FieldElem::one()}}
                                                                              : Assignment{})
              .is_zero())
        return false;
    return true;
  };
  Factorization over4 = factor_small(P("1 + b^3"), 2);
  CHECK(over4.factors.size() == 3);
  CHECK(over4.product() == P("1 + b^3"));
  Factorization over2 = factor_small(P("1 + b^3"), 1);
  CHECK(over2.factors.size() == 2);
  CHECK(over2.product() == P("1 + b^3"));
  for (const auto& [g, m] : over2.factors) CHECK(irreducible(g, 1));
  Factorization cube = factor_small(P("b^3"), 1);
  REQUIRE(cube.factors.size() == 1);
  CHECK(cube.factors[0].first == P("b"));
  CHECK(cube.factors[0].second == 3);
  Factorization hom = factor_small(P("x^3 + y^3"), 2);
  CHECK(hom.factors.size() == 3);
  CHECK(hom.product() == P("x^3 + y^3"));
  CHECK_THROWS_AS(factor_small(P("x*y + 1"), 2), DomainError);
}
