#include "upoly.hpp"

#include <algorithm>
#include <random>

#include "cuspk3/error.hpp"

namespace cuspk3::detail {

void UPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  UPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  r.trim();
  return r;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  UPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, FieldElem{});
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  UPoly q, r = a;
  if (a.degree() < b.degree()) return {q, r};
  q.c.assign(a.c.size() - b.c.size() + 1, FieldElem{});
  FieldElem li = b.lead().inv();
  for (int d = r.degree(); d >= b.degree(); --d) {
    FieldElem t = r.c[d] * li;
    if (t.is_zero()) continue;
    int shift = d - b.degree();
    q.c[shift] = t;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[shift + j] += t * b.c[j];
  }
  q.trim();
  r.trim();
  return {q, r};
}

UPoly mod(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly monic(const UPoly& a) {
  if (a.is_zero()) return a;
  UPoly r = a;
  FieldElem li = a.lead().inv();
  for (auto& x : r.c) x *= li;
  return r;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

UPoly derivative(const UPoly& a) {
  UPoly r;
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(i % 2 ? a.c[i] : FieldElem{});
  r.trim();
  return r;
}

UPoly x_poly() { return UPoly{{FieldElem::zero(), FieldElem::one()}}; }

namespace {

// Squarefree factorization over a perfect field of characteristic 2.
std::vector<std::pair<UPoly, int>> squarefree_parts(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly c = gcd(f, derivative(f));
  UPoly w = divmod(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    UPoly y = gcd(w, c);
    UPoly fac = divmod(w, y).first;
    if (fac.degree() > 0) out.emplace_back(monic(fac), i);
    w = y;
    c = divmod(c, y).first;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a square: take square roots of the even-degree coefficients.
    UPoly root;
    for (std::size_t j = 0; j < c.c.size(); j += 2) root.c.push_back(c.c[j].sqrt());
    root.trim();
    for (auto& [g, m] : squarefree_parts(root)) out.emplace_back(g, 2 * m);
  }
  return out;
}

UPoly square_mod(const UPoly& a, const UPoly& f) { return mod(a * a, f); }

// Distinct-degree split of a monic squarefree f: (product of degree-d factors, d).
std::vector<std::pair<UPoly, int>> distinct_degree(UPoly f, int k) {
  std::vector<std::pair<UPoly, int>> out;
  UPoly h = mod(x_poly(), f);
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    for (int i = 0; i < k; ++i) h = square_mod(h, f);  // h = x^(q^d) mod f
    UPoly g = gcd(f, h + x_poly());
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = divmod(f, g).first;
      h = mod(h, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

// Equal-degree split using the absolute trace to F2.
void equal_degree(const UPoly& g, int d, int k, std::mt19937& rng, std::vector<UPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<unsigned> coin(0, (1u << k) - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    UPoly a;
    for (int i = 0; i < g.degree(); ++i) a.c.push_back(FieldElem::from_mask(k, coin(rng)));
    a.trim();
    if (a.degree() < 1) continue;
    UPoly t = a, p = a;
    for (int i = 1; i < k * d; ++i) {
      p = square_mod(p, g);
      t = t + p;
    }
    UPoly h = gcd(g, t);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, k, rng, out);
      equal_degree(divmod(g, h).first, d, k, rng, out);
      return;
    }
  }
  throw InternalCheckFailed("equal-degree factorization did not split");
}

}  // namespace

std::vector<std::pair<UPoly, int>> factor(const UPoly& f, int k) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  std::vector<std::pair<UPoly, int>> out;
  std::mt19937 rng(0x5eed);
  for (auto& [part, m] : squarefree_parts(monic(f))) {
    for (auto& [g, d] : distinct_degree(part, k)) {
      std::vector<UPoly> pieces;
      equal_degree(g, d, k, rng, pieces);
      for (auto& p : pieces) out.emplace_back(monic(p), m);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    for (int i = x.first.degree(); i >= 0; --i)
      if (!(x.first.c[i] == y.first.c[i])) return x.first.c[i] < y.first.c[i];
    return x.second < y.second;
  });
  return out;
}

}  // namespace cuspk3::detail
