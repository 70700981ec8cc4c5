// Reference computations used only by the tests.  They share no code with
// the library: plain integer matrices, carry-less multiplication, explicit
// Laurent polynomials.
#pragma once

#include <cstdint>
#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

// Multiplication in F2[x]/(m) on bit masks.
inline unsigned clmul_mod(unsigned a, unsigned b, unsigned m) {
  int deg = 31 - __builtin_clz(m);
  unsigned acc = 0;
  for (int i = 0; i < deg; ++i) {
    if (b >> i & 1) acc ^= a;
    a <<= 1;
    if (a >> deg & 1) a ^= m;
  }
  return acc;
}

using Mat = std::vector<std::vector<long long>>;
using Vecz = std::vector<long long>;

inline long long pair(const Mat& m, const Vecz& x, const Vecz& y) {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * m[i][j] * y[j];
  return s;
}

// Every Z with 1 <= z_i <= bound and (Z + C').E_i <= 0 on all i, found by
// depth-first search in the given vertex order.  A vertex's inequality is
// tested as soon as it and all its neighbours carry values.
inline std::vector<Vecz> anti_nef_cycles(const Mat& m, const Vecz& cprime_dot, int bound) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::size_t>> nb(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m[i][j] != 0) nb[i].push_back(j);
  // A vertex becomes checkable at the position of the last of itself and its neighbours.
  std::vector<std::vector<std::size_t>> check_at(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t last = i;
    for (auto j : nb[i]) last = std::max(last, j);
    check_at[last].push_back(i);
  }
  std::vector<Vecz> out;
  Vecz z(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == n) {
      out.push_back(z);
      return;
    }
    for (int v = 1; v <= bound; ++v) {
      z[pos] = v;
      bool ok = true;
      for (auto i : check_at[pos]) {
        long long d = cprime_dot.empty() ? 0 : cprime_dot[i];
        for (std::size_t j = 0; j < n; ++j) d += m[i][j] * z[j];
        if (d > 0) {
          ok = false;
          break;
        }
      }
      if (ok) rec(pos + 1);
    }
    z[pos] = 0;
  };
  rec(0);
  return out;
}

// The componentwise minimum of the anti-nef cycles, if it is itself one of them.
inline std::optional<Vecz> minimal_anti_nef(const Mat& m, const Vecz& cprime_dot, int bound) {
  auto all = anti_nef_cycles(m, cprime_dot, bound);
  if (all.empty()) return std::nullopt;
  Vecz lo = all.front();
  for (const auto& z : all)
    for (std::size_t i = 0; i < z.size(); ++i) lo[i] = std::min(lo[i], z[i]);
  for (const auto& z : all)
    if (z == lo) return lo;
  return std::nullopt;
}

// max over effective Z != 0 with coefficients <= bound of 1 + (Z^2 + K.Z)/2,
// with K.E_i = -E_i^2 - 2 + 2 g_i.
inline long long max_pa(const Mat& m, const std::vector<int>& genus, int bound) {
  const std::size_t n = m.size();
  Vecz z(n, 0);
  long long best = std::numeric_limits<long long>::min();
  while (true) {
    std::size_t i = 0;
    while (i < n && ++z[i] > bound) z[i++] = 0;
    if (i == n) break;
    long long kz = 0;
    for (std::size_t j = 0; j < n; ++j) kz += z[j] * (-m[j][j] - 2 + 2 * genus[j]);
    best = std::max(best, 1 + (pair(m, z, z) + kz) / 2);
  }
  return best;
}

// Laurent polynomials over F2 in u, as exponent sets; vector fields f D_u.
using Laurent = std::map<int, int>;  // exponent -> coefficient mod 2

inline Laurent add(Laurent a, const Laurent& b) {
  for (auto [e, c] : b) a[e] ^= c;
  for (auto it = a.begin(); it != a.end();) it = it->second ? std::next(it) : a.erase(it);
  return a;
}

inline Laurent mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (auto [e, c] : a)
    for (auto [f, d] : b) out[e + f] ^= c & d;
  return add(out, {});
}

inline Laurent deriv(const Laurent& a) {
  Laurent out;
  for (auto [e, c] : a)
    if (e & 1) out[e - 1] ^= c;
  return add(out, {});
}

// [f D, g D] = (f g' + g f') D in characteristic 2.
inline Laurent bracket(const Laurent& f, const Laurent& g) { return add(mul(f, deriv(g)), mul(g, deriv(f))); }
// (f D)^2 = f f' D + f^2 D^2, and D^2 kills every Laurent monomial in characteristic 2.
inline Laurent square(const Laurent& f) { return mul(f, deriv(f)); }

}  // namespace oracle
