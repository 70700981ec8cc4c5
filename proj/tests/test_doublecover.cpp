#include "doctest.h"

#include <set>

#include "cuspk3/doublecover.hpp"
#include "cuspk3/error.hpp"

using namespace cuspk3;

namespace {

const FieldElem zero = FieldElem::zero();
const FieldElem one = FieldElem::one();

using Pt = std::pair<FieldElem, FieldElem>;

std::set<Pt> points_of(const std::vector<CoverPoint>& sp) {
  std::set<Pt> out;
  for (const auto& p : sp)
    for (const auto& q : p.orbit) out.insert(q);
  return out;
}

BlowupResult at(const std::string& f, int level = 8) {
  return blowup_classify(CoverEq{MPoly::parse(f), level}, zero, zero);
}

}  // namespace

TEST_CASE("singular points of the two chart equations over F256") {
  for (auto r : elements(2))
    for (auto s : elements(2)) {
      // Partials written out by hand: for the quadruple-point branch
      // d/da = a^2 (1 + s^2 b^2), d/db = b^2 (1 + r^2 a^2).
      std::set<Pt> quad, fixed;
      for (auto a : elements(8))
        for (auto b : elements(8)) {
          if ((a * a * (one + s * s * b * b)).is_zero() && (b * b * (one + r * r * a * a)).is_zero())
            quad.insert({a, b});
          // For the fixed-point branch d/da = b^4 + s^2 b^2, d/db = a^4 + r^2 a^2.
          if ((b.pow(4) + s * s * b * b).is_zero() && (a.pow(4) + r * r * a * a).is_zero()) fixed.insert({a, b});
        }
      ActionParams p{r, s};
      CHECK(points_of(singular_points(quad_point_equation(p, 2))) == quad);
      CHECK(points_of(singular_points(fixed_point_equation(p, 2))) == fixed);
    }
  // With r = s = 1 the quadruple-point chart also sees the fixed point (1, 1).
  auto sp = singular_points(quad_point_equation({one, one}, 4));
  CHECK(points_of(sp) == std::set<Pt>{{zero, zero}, {one, one}});
  CHECK(points_of(singular_points(CoverEq{MPoly::parse("a*b"), 4})) == std::set<Pt>{{zero, zero}});
}

TEST_CASE("the first blowup of the quadruple point") {
  // a(1 + b^3) + a^3 (s^2 + r^2 b) b^2 with r = s = 1: on the exceptional
  // line a = 0 the singular points are b^3 = 1.  The chart also contains the
  // fixed point (1, 1).
  MPoly f = MPoly::parse("a*(1 + b^3) + a^3*(1 + b)*b^2");
  auto over4 = singular_points(CoverEq{f, 2});
  CHECK(over4.size() == 4);
  int on_line = 0;
  for (const auto& p : over4) {
    CHECK(p.degree == 1);
    if (p.a.is_zero()) {
      ++on_line;
      CHECK(p.b.pow(3).is_one());
    } else {
      CHECK(p.a.is_one());
      CHECK(p.b.is_one());
    }
  }
  CHECK(on_line == 3);
  auto over2 = singular_points(CoverEq{f, 1});
  std::multiset<int> degrees;
  for (const auto& p : over2)
    if (p.a.is_zero()) degrees.insert(p.degree);
  CHECK(degrees == std::multiset<int>{1, 2});
}

TEST_CASE("normal forms of rational double points in characteristic 2") {
  const std::pair<const char*, const char*> cases[] = {
      {"a*b", "A1"},          {"a^2*b + a*b^2", "D4"}, {"a^2*b + a*b^3", "D6"}, {"a^2*b + a*b^4", "D8"},
      {"a^2*b + a*b^5", "D10"}, {"a^3 + a*b^3", "E7"},   {"a^3 + b^5", "E8"},     {"a^3 + b^3", "D4"}};
  for (auto [f, name] : cases) {
    BlowupResult r = at(f);
    CHECK_MESSAGE(r.rdp, f);
    CHECK_MESSAGE(r.type.name() == name, f);
    CHECK(std::llabs(determinant(r.geometric.matrix())) == connection_index(r.type));
  }
  CHECK(at("a^2*b + a*b^4").generations == 3);
}

TEST_CASE("quadruple point: D4 over F4, B3 over F2") {
  for (auto r : elements(2))
    for (auto s : elements(2)) {
      if (r.is_zero() && s.is_zero()) continue;
      BlowupResult res = blowup_classify(quad_point_equation({r, s}, 2), zero, zero);
      CHECK(res.rdp);
      CHECK(res.type.name() == "D4");
      CHECK(res.generations == 1);
      int a1 = 0;
      for (const auto& n : res.nodes) a1 += n.a1;
      CHECK(a1 == 3);
    }
  BlowupResult b3 = blowup_classify(quad_point_equation({one, one}, 1), zero, zero);
  CHECK(b3.type.name() == "B3");
  CHECK(b3.graph.size() == 3);
  CHECK(b3.geometric.size() == 4);
  CHECK(classify(b3.geometric).name() == "D4");
}

TEST_CASE("fixed points: D4, D8 and the elliptic point") {
  for (auto r : elements(2))
    for (auto s : elements(2)) {
      CoverEq eq = fixed_point_equation({r, s}, 2);
      for (const auto& fp : fixed_points({r, s})) {
        BlowupResult res = blowup_classify(eq, fp.a, fp.b);
        if (!r.is_zero() && !s.is_zero()) {
          CHECK(res.type.name() == "D4");
        } else if (!r.is_zero() || !s.is_zero()) {
          CHECK(res.type.name() == "D8");
          CHECK(res.generations == 3);
        } else {
          CHECK_FALSE(res.rdp);
          CHECK(res.elliptic19_shape);
          CHECK_FALSE(res.note.empty());
        }
      }
    }
  BlowupResult tw = blowup_classify(fixed_point_equation({zero, zero}, 1), zero, zero);
  CHECK_FALSE(tw.rdp);
  CHECK(tw.elliptic19_shape);
  CHECK(tw.graph.is_twisted());
  CHECK(tw.graph.size() == 5);
}

TEST_CASE("resolution graphs are made of (-2)-curves with consistent addresses") {
  BlowupResult r = at("a^2*b + a*b^4");
  for (const auto& v : r.geometric.vertices()) {
    CHECK(v.self_int == -2);
    CHECK(r.vertex_address.count(v.id) == 1);
  }
  CHECK(r.nodes.front().address.empty());
  CHECK(r.nodes.front().depth == 0);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(at("a + b^2"), DomainError);          // smooth point
  CHECK_THROWS_AS(at("a^3 + b^4 + a*b^2"), DomainError);  // curve of singular points
  CHECK_THROWS_AS(blowup_classify(CoverEq{MPoly::parse("a*b"), 2}, FieldElem::from_mask(4, 2), zero), DomainError);
}
