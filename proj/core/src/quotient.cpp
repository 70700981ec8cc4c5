#include "cuspk3/quotient.hpp"

#include <algorithm>
#include <set>

#include "cuspk3/error.hpp"

namespace cuspk3 {
namespace {

MPoly param(const std::optional<ActionParams>& p, bool first) {
  if (!p) return MPoly::var(first ? "r" : "s");
  return MPoly(first ? p->r : p->s);
}

int exponent_of(const MPoly& mono_owner, const Exps& e, const std::string& name) {
  const auto& vars = mono_owner.vars();
  auto it = std::find(vars.begin(), vars.end(), name);
  return it == vars.end() ? 0 : e[it - vars.begin()];
}

// Odd exponent of the single-variable monomial X.
int odd_exponent(const MPoly& x, const std::string& name) {
  if (x.size() != 1 || x.vars().size() != 1 || x.vars()[0] != name)
    throw DomainError("basis element must be a power of " + name);
  int e = x.leading_term().first[0];
  if (e % 2 == 0 || e < 0) throw DomainError("basis element must be an odd power of " + name);
  return e;
}

// Rewrite a polynomial with even, nonnegative chart exponents in a = x^2, b = y^2.
MPoly rewrite_in_ab(const MPoly& p, const Chart& chart) {
  const std::string& x = chart.vars[0];
  const std::string& y = chart.vars[1];
  MPoly out;
  for (const auto& [e, c] : p.terms()) {
    std::map<std::string, int> powers;
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string& v = p.vars()[i];
      if (v == x || v == y) {
        if (e[i] < 0 || e[i] % 2 != 0) throw InternalCheckFailed("term outside the square subring: " + p.to_string());
        powers[v == x ? "a" : "b"] += e[i] / 2;
      } else {
        powers[v] += e[i];
      }
    }
    out += MPoly::monomial(c, powers);
  }
  return out;
}

bool in_square_subring(const MPoly& p, const Chart& chart) {
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i) {
      const std::string& v = p.vars()[i];
      if (e[i] < 0) return false;
      if ((v == chart.vars[0] || v == chart.vars[1]) && e[i] % 2 != 0) return false;
    }
  return true;
}

MPoly truncate(const MPoly& p, int n) {
  MPoly out;
  for (const auto& [e, c] : p.terms()) {
    int d = 0;
    for (int x : e) d += x;
    if (d > n) continue;
    std::map<std::string, int> powers;
    for (std::size_t i = 0; i < e.size(); ++i) powers[p.vars()[i]] = e[i];
    out += MPoly::monomial(c, powers);
  }
  return out;
}

}  // namespace

Chart fixed_chart(const std::optional<ActionParams>& params) {
  MPoly x = MPoly::var("x"), y = MPoly::var("y");
  Chart c;
  c.name = "fixed";
  c.vars = {"x", "y"};
  c.delta = Derivation({{"x", x.pow(4) + param(params, true) * x.pow(2)},
                        {"y", y.pow(4) + param(params, false) * y.pow(2)}});
  c.generators = {x, y};
  c.odd_x = x;
  c.odd_y = y;
  return c;
}

Chart quad_chart(const std::optional<ActionParams>& params) {
  MPoly u = MPoly::var("u"), v = MPoly::var("v");
  Chart c;
  c.name = "quad";
  c.vars = {"u", "v"};
  c.delta = Derivation({{"u", u.pow(-2) + param(params, true)}, {"v", v.pow(-2) + param(params, false)}});
  c.generators = {u.pow(2), u.pow(3), v.pow(2), v.pow(3)};
  c.odd_x = u.pow(3);
  c.odd_y = v.pow(3);
  return c;
}

Chart plain_chart(const std::string& name, const Derivation& delta, const std::string& x, const std::string& y) {
  Chart c;
  c.name = name;
  c.vars = {x, y};
  c.delta = delta;
  c.generators = {MPoly::var(x), MPoly::var(y)};
  c.odd_x = MPoly::var(x);
  c.odd_y = MPoly::var(y);
  return c;
}

std::vector<MPoly> fixed_ideal(const Chart& chart) {
  std::vector<MPoly> out;
  for (const auto& g : chart.generators) {
    MPoly d = chart.delta.apply(g);
    if (d.is_zero()) continue;
    if (d.is_constant()) return {MPoly(FieldElem::one())};
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  }
  return out;
}

std::vector<FixedPoint> fixed_points(const ActionParams& params) {
  std::vector<FieldElem> xs{FieldElem::zero()}, ys{FieldElem::zero()};
  if (!params.r.is_zero()) xs.push_back(params.r.sqrt());
  if (!params.s.is_zero()) ys.push_back(params.s.sqrt());
  std::vector<FixedPoint> out;
  for (auto x : xs)
    for (auto y : ys) out.push_back({x, y, x * x, y * y});
  return out;
}

KernelData invariant_kernel_rank4(const Chart& chart) {
  const std::string& x = chart.vars[0];
  const std::string& y = chart.vars[1];
  odd_exponent(chart.odd_x, x);
  odd_exponent(chart.odd_y, y);
  KernelData out;
  out.f = chart.delta.apply(chart.odd_x);
  out.g = chart.delta.apply(chart.odd_y);
  if (out.f.is_zero() || out.g.is_zero()) throw DomainError("invariant_kernel_rank4: delta(X) and delta(Y) must be nonzero");
  if (out.f.has_var(y) || out.g.has_var(x))
    throw DomainError("invariant_kernel_rank4: delta(X) must not involve " + y + " and delta(Y) must not involve " + x);
  if (!in_square_subring(out.f, chart) || !in_square_subring(out.g, chart))
    throw DomainError("invariant_kernel_rank4: delta(X), delta(Y) must lie in the subring of squares");
  MPoly common = gcd(out.f, out.g);
  if (!(common == MPoly(FieldElem::one()))) throw DomainError("invariant_kernel_rank4: delta(X), delta(Y) not coprime");
  // With delta(X)=f, delta(Y)=g coprime, the kernel of delta on the free
  // module S<1,X,Y,XY> is S + S(gX + fY), S generated by a = x^2, b = y^2.
  out.a = MPoly::var(x, 2);
  out.b = MPoly::var(y, 2);
  out.c = out.g * chart.odd_x + out.f * chart.odd_y;
  MPoly sq_rhs = rewrite_in_ab(out.g.pow(2) * chart.odd_x.pow(2) + out.f.pow(2) * chart.odd_y.pow(2), chart);
  out.relation = MPoly::var("c", 2) + sq_rhs;
  return out;
}

bool verify_relation(const Chart& chart, const KernelData& data) {
  MPoly v = data.relation.substitute(std::map<std::string, MPoly>{{"a", data.a}, {"b", data.b}, {"c", data.c}});
  if (!v.is_zero()) return false;
  return chart.delta.apply(data.a).is_zero() && chart.delta.apply(data.b).is_zero() &&
         chart.delta.apply(data.c).is_zero();
}

Matrix4 cokernel_matrix(const Chart& chart) {
  const std::string& x = chart.vars[0];
  const std::string& y = chart.vars[1];
  int ex = odd_exponent(chart.odd_x, x), ey = odd_exponent(chart.odd_y, y);
  std::array<MPoly, 4> basis{MPoly(FieldElem::one()), chart.odd_x, chart.odd_y, chart.odd_x * chart.odd_y};
  Matrix4 m;
  for (int j = 0; j < 4; ++j) {
    MPoly d = chart.delta.apply(basis[j]);
    for (const auto& [e, c] : d.terms()) {
      std::map<std::string, int> powers;
      for (std::size_t i = 0; i < e.size(); ++i) powers[d.vars()[i]] = e[i];
      int px = exponent_of(d, e, x), py = exponent_of(d, e, y);
      bool ox = (px & 1) != 0, oy = (py & 1) != 0;
      if (ox) powers[x] -= ex;
      if (oy) powers[y] -= ey;
      if (powers[x] < 0 || powers[y] < 0) throw InternalCheckFailed("term outside the chart ring in delta(basis)");
      m[(ox ? 1 : 0) + (oy ? 2 : 0)][j] += MPoly::monomial(c, powers);
    }
  }
  return m;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Invariant: return "invariant";
    case Membership::NotInvariant: return "not-invariant";
    case Membership::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

std::vector<Exps> monomials_up_to(std::size_t n, int d) {
  std::vector<Exps> out;
  Exps e(n, 0);
  // Enumerate by recursion on the position.
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == n) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[pos] = k;
      self(self, pos + 1, left - k);
    }
    e[pos] = 0;
  };
  if (d >= 0) rec(rec, 0, d);
  return out;
}

Exps exps_in(const MPoly& p, const Exps& e, const std::vector<std::string>& vars) {
  Exps out(vars.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto it = std::lower_bound(vars.begin(), vars.end(), p.vars()[i]);
    out[it - vars.begin()] = e[i];
  }
  return out;
}

// Solve sum_j z_j col_j = target over F256; true iff solvable.
bool solvable(const std::vector<std::map<Exps, FieldElem>>& cols, const std::map<Exps, FieldElem>& target) {
  std::map<Exps, int> row_of;
  for (const auto& col : cols)
    for (const auto& [e, c] : col) row_of.emplace(e, 0);
  for (const auto& [e, c] : target) row_of.emplace(e, 0);
  int nrows = 0;
  for (auto& [e, i] : row_of) i = nrows++;
  const int ncols = static_cast<int>(cols.size());
  std::vector<std::vector<FieldElem>> a(nrows, std::vector<FieldElem>(ncols + 1));
  for (int j = 0; j < ncols; ++j)
    for (const auto& [e, c] : cols[j]) a[row_of[e]][j] = c;
  for (const auto& [e, c] : target) a[row_of[e]][ncols] = c;
  int rank = 0;
  for (int col = 0; col < ncols && rank < nrows; ++col) {
    int piv = -1;
    for (int r = rank; r < nrows; ++r)
      if (!a[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    FieldElem inv = a[rank][col].inv();
    for (int c = col; c <= ncols; ++c) a[rank][c] *= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == rank || a[r][col].is_zero()) continue;
      FieldElem t = a[r][col];
      for (int c = col; c <= ncols; ++c)
        if (!a[rank][c].is_zero()) a[r][c] += t * a[rank][c];
    }
    ++rank;
  }
  for (int r = rank; r < nrows; ++r)
    if (!a[r][ncols].is_zero()) return false;
  return true;
}

}  // namespace

InvarianceResult ideal_invariant_check(const std::vector<MPoly>& gens, const Derivation& delta, int degree_bound,
                                       const std::vector<MPoly>& relations) {
  InvarianceResult res;
  std::set<std::string> varset;
  int level = 1;
  auto note = [&](const MPoly& p) {
    if (p.has_negative_exponents()) throw DomainError("ideal_invariant_check needs polynomial data");
    for (const auto& v : p.vars()) varset.insert(v);
    level = std::max(level, p.coeff_level());
  };
  for (const auto& g : gens) note(g);
  for (const auto& g : relations) note(g);
  for (const auto& [name, c] : delta.coeffs()) {
    note(c);
    varset.insert(name);
  }
  std::vector<std::string> vars(varset.begin(), varset.end());

  std::vector<MPoly> ideal_gens;
  for (const auto& g : gens)
    if (!g.is_zero()) ideal_gens.push_back(g);
  for (const auto& g : relations)
    if (!g.is_zero()) ideal_gens.push_back(g);

  bool inconclusive = false;
  for (const auto& g : gens) {
    MPoly h = delta.apply(g);
    if (h.is_zero()) continue;
    bool member = false;
    if (h.total_degree() <= degree_bound) {
      std::vector<std::map<Exps, FieldElem>> cols;
      for (const auto& G : ideal_gens) {
        int room = degree_bound - G.total_degree();
        for (const auto& m : monomials_up_to(vars.size(), room)) {
          std::map<Exps, FieldElem> col;
          for (const auto& [e, c] : G.terms()) {
            Exps ee = exps_in(G, e, vars);
            for (std::size_t i = 0; i < ee.size(); ++i) ee[i] += m[i];
            col.emplace(std::move(ee), c);
          }
          cols.push_back(std::move(col));
        }
      }
      std::map<Exps, FieldElem> target;
      for (const auto& [e, c] : h.terms()) target.emplace(exps_in(h, e, vars), c);
      member = solvable(cols, target);
    }
    if (member) continue;

    // Look for a point of V(I) where h survives.
    double points = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) points *= static_cast<double>(1 << level);
    if (points <= 65536.0) {
      auto field = elements(level);
      std::vector<std::size_t> idx(vars.size(), 0);
      for (std::size_t n = 0; n < static_cast<std::size_t>(points); ++n) {
        Assignment pt;
        std::size_t m = n;
        for (const auto& v : vars) {
          pt[v] = field[m % field.size()];
          m /= field.size();
        }
        bool on = std::all_of(ideal_gens.begin(), ideal_gens.end(), [&](const MPoly& G) { return G.evaluate(pt).is_zero(); });
        if (on && !h.evaluate(pt).is_zero()) {
          res.verdict = Membership::NotInvariant;
          res.escaping = h;
          res.witness = pt;
          return res;
        }
      }
    }
    inconclusive = true;
  }
  res.verdict = inconclusive ? Membership::Inconclusive : Membership::Invariant;
  return res;
}

OrbitIdealInstance orbit_ideal(const ActionParams& params, FieldElem lambda) {
  MPoly p = MPoly::var("p"), q = MPoly::var("q"), y = MPoly::var("y");
  MPoly one(FieldElem::one());
  MPoly dq = one + MPoly(params.r) * p;          // delta(u^3) = 1 + r u^2
  MPoly dy = y.pow(4) + MPoly(params.s) * y.pow(2);  // delta(v^-1) = v^-4 + s v^-2
  OrbitIdealInstance out;
  out.gens = {p, dq * (y + MPoly(lambda)) + dy * q};
  out.delta = Derivation({{"p", MPoly{}}, {"q", dq}, {"y", dy}});
  out.relations = {p.pow(3) + q.pow(2)};
  return out;
}

std::vector<Substitution> deformation_normalize(const MPoly& g, int N) {
  for (const auto& v : g.vars())
    if (v != "a" && v != "b") throw DomainError("deformation_normalize: g may only involve a and b");
  if (g.has_negative_exponents()) throw DomainError("deformation_normalize: g must be a polynomial");
  for (const auto& [e, c] : g.terms()) {
    int i = exponent_of(g, e, "a"), j = exponent_of(g, e, "b");
    if (!((i >= 3 && j >= 2) || (i >= 2 && j >= 3)))
      throw DomainError("deformation_normalize: g is not in the ideal (a^3 b^2, a^2 b^3)");
  }
  const MPoly a = MPoly::var("a"), b = MPoly::var("b");
  const MPoly f0 = a.pow(3) + b.pow(3);
  std::vector<Substitution> subs;
  MPoly h = truncate(g, N);
  for (int guard = 0; !h.is_zero(); ++guard) {
    if (guard > 100000) throw InternalCheckFailed("deformation_normalize did not terminate");
    // Minimal total degree, then minimal a-degree.
    int best_d = 0, best_m = 0, best_n = 0;
    FieldElem lambda;
    bool first = true;
    for (const auto& [e, c] : h.terms()) {
      int m = exponent_of(h, e, "a"), n = exponent_of(h, e, "b");
      if (first || m + n < best_d || (m + n == best_d && m < best_m)) {
        best_d = m + n;
        best_m = m;
        best_n = n;
        lambda = c;
        first = false;
      }
    }
    Substitution step;
    if (best_m >= 3 && best_n >= 2) {
      step.var = "a";
      step.value = a + MPoly::monomial(lambda, {{"a", best_m - 2}, {"b", best_n}});
    } else if (best_m == 2 && best_n >= 3) {
      step.var = "b";
      step.value = b + MPoly::monomial(lambda, {{"a", 2}, {"b", best_n - 2}});
    } else {
      throw InternalCheckFailed("deformation_normalize left the ideal at a^" + std::to_string(best_m) + " b^" +
                                std::to_string(best_n));
    }
    h = truncate((f0 + h).substitute(step.var, step.value) + f0, N);
    if (!h.coeff({{"a", best_m}, {"b", best_n}}).is_zero())
      throw InternalCheckFailed("deformation_normalize failed to remove a monomial");
    subs.push_back(std::move(step));
  }
  return subs;
}

}  // namespace cuspk3
