#include "doctest.h"

#include "cuspk3/error.hpp"
#include "cuspk3/quotient.hpp"

using namespace cuspk3;

namespace {

MPoly P(const std::string& s) { return MPoly::parse(s); }
const FieldElem one = FieldElem::one();
const FieldElem zero = FieldElem::zero();
const FieldElem w = FieldElem::omega();

// Terms of total degree <= n.  Substituting a -> a + (order >= 1) never lowers
// degrees, so truncating after every step is harmless.
MPoly low_part(const MPoly& f, int n) {
  MPoly out;
  for (const auto& [e, c] : f.terms()) {
    int d = 0;
    std::map<std::string, int> pw;
    for (std::size_t i = 0; i < e.size(); ++i) {
      d += e[i];
      pw[f.vars()[i]] = e[i];
    }
    if (d <= n) out += MPoly::monomial(c, pw);
  }
  return out;
}

}  // namespace

TEST_CASE("the action is p-closed symbolically") {
  CHECK(is_p_closed(fixed_chart().delta));
  CHECK(is_p_closed(quad_chart().delta));
  CHECK(fixed_chart().delta.apply(P("x")) == P("x^4 + r*x^2"));
  CHECK(quad_chart().delta.apply(P("u^3")) == P("1 + r*u^2"));
}

TEST_CASE("fixed ideals") {
  auto fx = fixed_ideal(fixed_chart());
  REQUIRE(fx.size() == 2);
  CHECK(fx[0] == P("x^4 + r*x^2"));
  CHECK(fx[1] == P("y^4 + s*y^2"));
  auto fq = fixed_ideal(quad_chart());
  CHECK(std::find(fq.begin(), fq.end(), P("1 + r*u^2")) != fq.end());
  auto unit = fixed_ideal(plain_chart("t", Derivation(std::map<std::string, MPoly>{{"x", P("1")}})));
  REQUIRE(unit.size() == 1);
  CHECK(unit[0] == MPoly(one));
}

TEST_CASE("fixed points agree with the fixed ideal at every point of F16^2") {
  for (auto r : elements(4))
    for (auto s : elements(4)) {
      ActionParams p{r, s};
      auto gens = fixed_ideal(fixed_chart(p));
      std::vector<std::pair<FieldElem, FieldElem>> zeros;
      for (auto x : elements(4))
        for (auto y : elements(4)) {
          Assignment pt{{"x", x}, {"y", y}};
          if (std::all_of(gens.begin(), gens.end(), [&](const MPoly& g) { return g.evaluate(pt).is_zero(); }))
            zeros.emplace_back(x, y);
        }
      auto fps = fixed_points(p);
      REQUIRE(fps.size() == zeros.size());
      for (const auto& fp : fps) {
        CHECK(std::find(zeros.begin(), zeros.end(), std::make_pair(fp.x, fp.y)) != zeros.end());
        CHECK(fp.a == fp.x * fp.x);
        CHECK(fp.b == fp.y * fp.y);
      }
      std::size_t expected = (r.is_zero() ? 1 : 2) * (s.is_zero() ? 1 : 2);
      CHECK(fps.size() == expected);
    }
}

TEST_CASE("invariant rings of both charts") {
  KernelData kf = invariant_kernel_rank4(fixed_chart());
  CHECK(kf.a == P("x^2"));
  CHECK(kf.b == P("y^2"));
  CHECK(kf.c == P("x*(y^4 + s*y^2) + y*(x^4 + r*x^2)"));
  CHECK(kf.relation == P("c^2 + a*(b^4 + s^2*b^2) + b*(a^4 + r^2*a^2)"));
  CHECK(verify_relation(fixed_chart(), kf));

  KernelData kq = invariant_kernel_rank4(quad_chart());
  CHECK(kq.c == P("(1 + s*v^2)*u^3 + (1 + r*u^2)*v^3"));
  CHECK(kq.relation == P("c^2 + a^3 + b^3 + s^2*a^3*b^2 + r^2*a^2*b^3"));
  CHECK(verify_relation(quad_chart(), kq));

  Chart trivial = plain_chart("t", Derivation(std::map<std::string, MPoly>{{"x", P("1")}, {"y", P("1")}}));
  KernelData kt = invariant_kernel_rank4(trivial);
  CHECK(kt.c == P("x + y"));
  CHECK(kt.relation == P("c^2 + a + b"));

  KernelData shifted = kf;
  shifted.c = shifted.c + MPoly(one);
  CHECK_FALSE(verify_relation(fixed_chart(), shifted));
}

TEST_CASE("relations specialize with numeric parameters") {
  for (auto r : elements(2))
    for (auto s : elements(2)) {
      ActionParams p{r, s};
      KernelData k = invariant_kernel_rank4(fixed_chart(p));
      CHECK(verify_relation(fixed_chart(p), k));
      MPoly sym = invariant_kernel_rank4(fixed_chart()).relation.evaluate_partial({{"r", r}, {"s", s}});
      CHECK(k.relation == sym);
    }
}

TEST_CASE("kernel errors") {
  Chart bad = plain_chart("b", Derivation(std::map<std::string, MPoly>{{"x", P("y")}, {"y", P("1")}}));
  CHECK_THROWS_AS(invariant_kernel_rank4(bad), DomainError);
  Chart zero_part = plain_chart("z", Derivation(std::map<std::string, MPoly>{{"x", P("1")}}));
  CHECK_THROWS_AS(invariant_kernel_rank4(zero_part), DomainError);
}

TEST_CASE("cokernel matrices") {
  for (const Chart& c : {fixed_chart(), quad_chart()}) {
    KernelData k = invariant_kernel_rank4(c);
    Matrix4 m = cokernel_matrix(c);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        MPoly want;
        if (i == 0 && j == 1) want = k.f;
        if (i == 0 && j == 2) want = k.g;
        if (i == 1 && j == 3) want = k.g;
        if (i == 2 && j == 3) want = k.f;
        CHECK(m[i][j] == want);
      }
  }
  Matrix4 q = cokernel_matrix(quad_chart());
  CHECK(q[0][1] == P("1 + r*u^2"));
  CHECK(q[0][2] == P("1 + s*v^2"));
  Matrix4 z = cokernel_matrix(plain_chart("0", Derivation()));
  for (const auto& row : z)
    for (const auto& e : row) CHECK(e.is_zero());
}

TEST_CASE("orbit ideals are invariant") {
  for (auto s : elements(2))
    for (auto lambda : nonzero_elements(2)) {
      auto inst = orbit_ideal({one, s}, lambda);
      InvarianceResult res = ideal_invariant_check(inst.gens, inst.delta, 12, inst.relations);
      CHECK(res.verdict == Membership::Invariant);
    }
  auto inst = orbit_ideal({one, one}, one);
  CHECK(ideal_invariant_check({MPoly(one)}, inst.delta).verdict == Membership::Invariant);
}

TEST_CASE("maximal ideal of a moving point is not invariant") {
  // (x, y) = (omega, 0) is not fixed when r = s = 1: delta(x + omega) = 1 there.
  Chart c = fixed_chart(ActionParams{one, one});
  InvarianceResult res = ideal_invariant_check({P("x") + MPoly(w), P("y")}, c.delta);
  REQUIRE(res.verdict == Membership::NotInvariant);
  REQUIRE(res.witness.has_value());
  REQUIRE(res.escaping.has_value());
  CHECK(!res.escaping->evaluate(*res.witness).is_zero());
  // A fixed point's maximal ideal is invariant.
  CHECK(ideal_invariant_check({P("x + 1"), P("y")}, c.delta).verdict == Membership::Invariant);
}

TEST_CASE("deformation normalization") {
  CHECK(deformation_normalize(MPoly(), 8).empty());
  FieldElem s0 = w;
  auto steps = deformation_normalize(MPoly(s0 * s0) * P("a^3*b^2"), 9);
  REQUIRE(!steps.empty());
  CHECK(steps[0].var == "a");
  CHECK(steps[0].value == P("a") + MPoly(s0 * s0) * P("a*b^2"));
  auto steps2 = deformation_normalize(MPoly(w) * P("a^2*b^3"), 9);
  REQUIRE(!steps2.empty());
  CHECK(steps2[0].var == "b");
  CHECK(steps2[0].value == P("b") + MPoly(w) * P("a^2*b"));

  // After all substitutions nothing of degree <= N is left of the perturbation.
  const int N = 12;
  MPoly g = P("a^3*b^2 + a^2*b^3 + a^4*b^4 + a^5*b^3");
  MPoly f = P("a^3 + b^3") + g;
  for (const auto& st : deformation_normalize(g, N)) f = low_part(f.substitute(st.var, st.value), N);
  CHECK(f == P("a^3 + b^3"));
  CHECK_THROWS_AS(deformation_normalize(P("a^2*b^2"), 8), DomainError);
  CHECK_THROWS_AS(deformation_normalize(P("c*a^3*b^3"), 8), DomainError);
}
