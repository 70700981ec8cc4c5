#include "cuspk3/resgraph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

#include "cuspk3/error.hpp"

namespace cuspk3 {

// ---------------------------------------------------------------------------
// ResGraph

int ResGraph::add_vertex(const Vertex& v) {
  if (v.id.empty()) throw DomainError("vertex id must not be empty");
  if (index_of(v.id) >= 0) throw DomainError("duplicate vertex id '" + v.id + "'");
  if (v.deg < 1) throw DomainError("vertex degree label must be >= 1");
  if (v.genus < 0) throw DomainError("genus must be >= 0");
  vertices_.push_back(v);
  for (auto& row : w_) row.push_back(0);
  w_.emplace_back(vertices_.size(), 0);
  return size() - 1;
}

int ResGraph::add_vertex(const std::string& id, int self_int, int genus, int deg) {
  return add_vertex(Vertex{id, self_int, genus, deg});
}

void ResGraph::set_edge(int a, int b, long long w) {
  if (a < 0 || b < 0 || a >= size() || b >= size()) throw DomainError("edge endpoint out of range");
  if (a == b) throw DomainError("self-intersections are vertex data, not edges");
  if (w < 0) throw DomainError("intersection numbers of distinct curves are >= 0");
  w_[a][b] = w;
  w_[b][a] = w;
}

void ResGraph::set_edge(const std::string& a, const std::string& b, long long w) { set_edge(require(a), require(b), w); }

int ResGraph::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i)
    if (vertices_[i].id == id) return i;
  return -1;
}

int ResGraph::require(const std::string& id) const {
  int i = index_of(id);
  if (i < 0) throw DomainError("unknown vertex '" + id + "'");
  return i;
}

long long ResGraph::pairing(int a, int b) const {
  if (a == b) return vertices_.at(a).self_int;
  return w_.at(a).at(b);
}

std::vector<int> ResGraph::neighbors(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (j != i && w_[i][j] != 0) out.push_back(j);
  return out;
}

bool ResGraph::is_twisted() const {
  return std::any_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.deg > 1; });
}

IntMatrix ResGraph::matrix() const {
  IntMatrix m(size(), std::vector<long long>(size()));
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) m[i][j] = pairing(i, j);
  return m;
}

ResGraph ResGraph::induced(const std::vector<int>& subset) const {
  ResGraph out;
  for (int i : subset) out.add_vertex(vertex(i));
  for (std::size_t a = 0; a < subset.size(); ++a)
    for (std::size_t b = a + 1; b < subset.size(); ++b)
      if (w_[subset[a]][subset[b]]) out.set_edge(static_cast<int>(a), static_cast<int>(b), w_[subset[a]][subset[b]]);
  return out;
}

std::vector<std::vector<int>> ResGraph::components(const std::vector<int>& subset) const {
  std::vector<int> in(size(), 0);
  if (subset.empty())
    std::fill(in.begin(), in.end(), 1);
  else
    for (int i : subset) in.at(i) = 1;
  std::vector<std::vector<int>> out;
  std::vector<int> seen(size(), 0);
  for (int s = 0; s < size(); ++s) {
    if (!in[s] || seen[s]) continue;
    std::vector<int> comp;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      comp.push_back(v);
      for (int u : neighbors(v))
        if (in[u] && !seen[u]) {
          seen[u] = 1;
          q.push(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool ResGraph::is_connected() const { return size() > 0 && components().size() == 1; }

Cycle ResGraph::cycle(const std::map<std::string, long long>& coeffs) const {
  Cycle z(size(), 0);
  for (const auto& [id, c] : coeffs) z[require(id)] += c;
  return z;
}

std::map<std::string, long long> ResGraph::to_map(const Cycle& z) const {
  std::map<std::string, long long> out;
  for (int i = 0; i < size(); ++i)
    if (z.at(i) != 0) out[vertices_[i].id] = z[i];
  return out;
}

std::string ResGraph::cycle_to_string(const Cycle& z) const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (z.at(i) == 0) continue;
    if (!out.empty()) out += "+";
    if (z[i] != 1) out += std::to_string(z[i]);
    out += vertices_[i].id;
  }
  return out.empty() ? "0" : out;
}

long long ResGraph::dot(const Cycle& x, const Cycle& y) const {
  if (static_cast<int>(x.size()) != size() || static_cast<int>(y.size()) != size())
    throw DomainError("cycle length does not match the graph");
  long long s = 0;
  for (int i = 0; i < size(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < size(); ++j)
      if (y[j] != 0) s += x[i] * pairing(i, j) * y[j];
  }
  return s;
}

Cycle ResGraph::basis_cycle(int i) const {
  Cycle z(size(), 0);
  z.at(i) = 1;
  return z;
}

// ---------------------------------------------------------------------------
// Linear algebra

long long determinant(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  IntMatrix a = m;
  long long sign = 1, prev = 1;
  for (int k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        __int128 num = static_cast<__int128>(a[i][j]) * a[k][k] - static_cast<__int128>(a[i][k]) * a[k][j];
        __int128 q = num / prev;
        if (q > INT64_MAX || q < INT64_MIN) throw DomainError("determinant overflows 64 bits");
        a[i][j] = static_cast<long long>(q);
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

RMatrix to_rational(const IntMatrix& m) {
  RMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (long long x : m[i]) out[i].emplace_back(x);
  return out;
}

Cycle primitive_integral(const std::vector<Rational>& v) {
  long long l = 1;
  for (const auto& x : v) l = std::lcm(l, x.denominator());
  Cycle out;
  long long g = 0;
  for (const auto& x : v) {
    long long y = x.numerator() * (l / x.denominator());
    out.push_back(y);
    g = std::gcd(g, y < 0 ? -y : y);
  }
  if (g == 0) return out;
  long long sign = 1;
  for (long long y : out)
    if (y != 0) {
      sign = y < 0 ? -1 : 1;
      break;
    }
  for (auto& y : out) y = y / g * sign;
  return out;
}

std::vector<Cycle> nullspace(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  RMatrix a = to_rational(m);
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int p = -1;
    for (int i = row; i < n; ++i)
      if (a[i][col].numerator() != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    Rational inv = Rational(1) / a[row][col];
    for (int j = col; j < n; ++j) a[row][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == row || a[i][col].numerator() == 0) continue;
      Rational t = a[i][col];
      for (int j = col; j < n; ++j) a[i][j] -= t * a[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<Cycle> out;
  for (int free = 0; free < n; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free];
    out.push_back(primitive_integral(v));
  }
  return out;
}

}  // namespace

Definiteness definiteness(const ResGraph& g) {
  Definiteness d;
  IntMatrix m = g.matrix();
  d.det = determinant(m);
  const int n = g.size();
  // boost::rational's mixed comparisons with int recurse under C++20, so the
  // code below tests numerators.
  // Symmetric elimination on -M: positive pivots until the remaining block
  // has no positive diagonal entry.
  RMatrix a = to_rational(m);
  for (auto& row : a)
    for (auto& x : row) x = -x;
  std::vector<bool> done(n, false);
  int pivots = 0;
  bool psd = true;
  while (true) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && a[i][i].numerator() > 0) {
        p = i;
        break;
      }
    if (p < 0) break;
    for (int i = 0; i < n; ++i) {
      if (done[i] || i == p) continue;
      Rational f = a[i][p] / a[p][p];
      if (f.numerator() == 0) continue;
      for (int j = 0; j < n; ++j)
        if (!done[j]) a[i][j] -= f * a[p][j];
    }
    done[p] = true;
    ++pivots;
  }
  for (int i = 0; i < n && psd; ++i)
    for (int j = 0; j < n && psd; ++j)
      if (!done[i] && !done[j] && a[i][j].numerator() != 0) psd = false;
  d.negative_semidefinite = psd;
  d.negative_definite = psd && pivots == n;
  if (psd) d.radical = nullspace(m);
  return d;
}

bool is_negative_definite(const ResGraph& g) { return definiteness(g).negative_definite; }

// ---------------------------------------------------------------------------
// Cycles

Cycle fundamental_cycle(const ResGraph& g, const std::vector<int>& support, const Cycle& cprime,
                        const std::vector<int>& order) {
  const int n = g.size();
  std::vector<int> S = support;
  if (S.empty()) {
    S.resize(n);
    std::iota(S.begin(), S.end(), 0);
  }
  std::vector<int> in(n, 0);
  for (int i : S) {
    if (i < 0 || i >= n) throw DomainError("support vertex out of range");
    in[i] = 1;
  }
  Cycle c = cprime.empty() ? Cycle(n, 0) : cprime;
  if (static_cast<int>(c.size()) != n) throw DomainError("C' has the wrong length");
  if (!is_negative_definite(g.induced(S))) throw DomainError("fundamental_cycle: pairing on the support is not negative definite");

  Cycle z(n, 0);
  bool c_zero = std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
  if (c_zero) {
    if (g.components(S).size() != 1) throw DomainError("fundamental_cycle: support must be connected when C' = 0");
    for (int i : S) z[i] = 1;
  } else {
    bool seeded = false;
    for (int i : S)
      if (g.dot(c, g.basis_cycle(i)) > 0) {
        z[i] = 1;
        seeded = true;
      }
    if (!seeded) throw DomainError("fundamental_cycle: no vertex of the support meets C'");
  }

  std::vector<int> scan;
  if (order.empty()) {
    scan = S;
    std::sort(scan.begin(), scan.end());
  } else {
    for (int i : order)
      if (i >= 0 && i < n && in[i]) scan.push_back(i);
    if (scan.size() != S.size()) throw DomainError("scan order must list every support vertex once");
  }

  auto excess = [&](int i) {
    long long s = 0;
    for (int j = 0; j < n; ++j) {
      long long zj = z[j] + c[j];
      if (zj != 0) s += zj * g.pairing(j, i);
    }
    return s;
  };
  for (long long guard = 0;; ++guard) {
    if (guard > 1000000) throw InternalCheckFailed("fundamental_cycle did not terminate");
    int hit = -1;
    for (int i : scan)
      if (excess(i) > 0) {
        hit = i;
        break;
      }
    if (hit < 0) break;
    ++z[hit];
  }
  return z;
}

Cycle schematic_preimage(const ResGraph& g, const std::vector<int>& contracted, const Cycle& cprime) {
  Cycle z = fundamental_cycle(g, contracted, cprime);
  for (int i = 0; i < g.size(); ++i) z[i] += cprime.at(i);
  return z;
}

BlowDown blown_down_set(const ResGraph& g, const std::vector<int>& contracted, const Cycle& cprime) {
  Cycle p = schematic_preimage(g, contracted, cprime);
  BlowDown out;
  for (int i : contracted) {
    long long d = g.dot(p, g.basis_cycle(i));
    if (d < 0)
      out.exceptional.push_back(i);
    else if (d == 0)
      out.remaining.push_back(i);
    else
      throw InternalCheckFailed("preimage pairs positively with a contracted curve");
  }
  return out;
}

std::vector<Rational> canonical_cycle(const ResGraph& g) {
  const int n = g.size();
  RMatrix a = to_rational(g.matrix());
  for (int i = 0; i < n; ++i) {
    const auto& v = g.vertex(i);
    a[i].emplace_back(-v.self_int - 2 + 2 * v.genus);
  }
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (int i = col; i < n; ++i)
      if (a[i][col].numerator() != 0) {
        p = i;
        break;
      }
    if (p < 0) throw DomainError("canonical_cycle: degenerate intersection matrix");
    std::swap(a[p], a[col]);
    Rational inv = Rational(1) / a[col][col];
    for (int j = col; j <= n; ++j) a[col][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col].numerator() == 0) continue;
      Rational t = a[i][col];
      for (int j = col; j <= n; ++j) a[i][j] -= t * a[col][j];
    }
  }
  std::vector<Rational> k(n);
  for (int i = 0; i < n; ++i) k[i] = a[i][n];
  return k;
}

long long cycle_pa(const ResGraph& g, const Cycle& z) {
  long long kz = 0;
  for (int i = 0; i < g.size(); ++i) {
    const auto& v = g.vertex(i);
    kz += z.at(i) * (-v.self_int - 2 + 2 * v.genus);
  }
  long long twice = g.dot(z, z) + kz;
  if (twice % 2 != 0) throw InternalCheckFailed("Z^2 + K.Z is odd");
  return 1 + twice / 2;
}

// ---------------------------------------------------------------------------
// Types and templates

namespace {

std::string family_letter(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::G: return "G";
    default: return "";
  }
}

}  // namespace

std::string SingularityType::name() const {
  switch (family) {
    case Family::Unknown: return "Unknown";
    case Family::Elliptic19: return twisted ? "twisted Elliptic-19_0" : "Elliptic-19_0";
    default: return family_letter(family) + std::to_string(rank);
  }
}

bool SingularityType::is_rdp() const {
  return family == Family::A || family == Family::B || family == Family::D || family == Family::E ||
         family == Family::G;
}

bool operator<(const SingularityType& a, const SingularityType& b) {
  if (a.family != b.family) return a.family < b.family;
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.twisted < b.twisted;
}

std::string FiberType::name() const {
  if (family == Family::Unknown || family == Family::Elliptic19) return "Unknown";
  return family_letter(family) + "~" + std::to_string(rank);
}

int FiberType::components() const {
  if (family == Family::B && rank == 3) return 4;
  return rank + 1;
}

SingularityType parse_singularity_type(const std::string& name) {
  if (name == "Elliptic-19_0") return {Family::Elliptic19, 6, false};
  if (name == "twisted Elliptic-19_0") return {Family::Elliptic19, 6, true};
  if (name.size() >= 2) {
    char f = name[0];
    std::string rest = name.substr(1);
    if (std::all_of(rest.begin(), rest.end(), ::isdigit)) {
      int r = std::stoi(rest);
      switch (f) {
        case 'A': if (r >= 1) return {Family::A, r, false}; break;
        case 'D': if (r >= 4) return {Family::D, r, false}; break;
        case 'E': if (r >= 6 && r <= 8) return {Family::E, r, false}; break;
        case 'B': if (r == 3) return {Family::B, 3, true}; break;
        case 'G': if (r == 2) return {Family::G, 2, true}; break;
        default: break;
      }
    }
  }
  throw ParseError("unknown singularity type '" + name + "'");
}

FiberType parse_fiber_type(const std::string& name) {
  if (name.size() >= 3 && name[1] == '~') {
    std::string rest = name.substr(2);
    if (std::all_of(rest.begin(), rest.end(), ::isdigit)) {
      int r = std::stoi(rest);
      FiberType t;
      t.rank = r;
      switch (name[0]) {
        case 'A': if (r >= 1) { t.family = Family::A; return t; } break;
        case 'D': if (r >= 4) { t.family = Family::D; return t; } break;
        case 'E': if (r >= 6 && r <= 8) { t.family = Family::E; return t; } break;
        case 'B': if (r == 3) { t.family = Family::B; t.twisted = true; return t; } break;
        default: break;
      }
    }
  }
  throw ParseError("unknown fiber type '" + name + "'");
}

namespace {

ResGraph chain_graph(int n, int first = 1) {
  ResGraph g;
  for (int i = first; i < first + n; ++i) g.add_vertex("E" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1);
  return g;
}

ResGraph e_graph(int n) {
  ResGraph g;
  for (int i = 1; i <= n; ++i) g.add_vertex("E" + std::to_string(i));
  g.set_edge("E1", "E3");
  for (int i = 3; i < n; ++i) g.set_edge("E" + std::to_string(i), "E" + std::to_string(i + 1));
  g.set_edge("E2", "E4");
  return g;
}

}  // namespace

ResGraph dynkin_graph(const SingularityType& t) {
  switch (t.family) {
    case Family::A:
      if (t.rank < 1) break;
      return chain_graph(t.rank);
    case Family::D: {
      if (t.rank < 4) break;
      ResGraph g = chain_graph(t.rank - 1);
      g.add_vertex("E" + std::to_string(t.rank));
      g.set_edge(t.rank - 3, t.rank - 1);
      return g;
    }
    case Family::E:
      if (t.rank < 6 || t.rank > 8) break;
      return e_graph(t.rank);
    case Family::B: {
      if (t.rank != 3) break;
      // D4 with two of its leaves exchanged by Frobenius.
      ResGraph g;
      g.add_vertex("E1");
      g.add_vertex("E2");
      g.add_vertex("E3", -2, 0, 2);
      g.set_edge("E1", "E2");
      g.set_edge("E2", "E3");
      return g;
    }
    case Family::G: {
      if (t.rank != 2) break;
      ResGraph g;
      g.add_vertex("E1");
      g.add_vertex("E2", -2, 0, 3);
      g.set_edge("E1", "E2");
      return g;
    }
    case Family::Elliptic19:
      return elliptic19_graph(t.twisted);
    default:
      break;
  }
  throw DomainError("no template for type " + t.name());
}

ResGraph extended_dynkin_graph(Family f, int rank) {
  switch (f) {
    case Family::A: {
      if (rank < 1) break;
      ResGraph g = chain_graph(rank + 1, 0);
      if (rank == 1)
        g.set_edge(0, 1, 2);
      else
        g.set_edge(0, rank);
      return g;
    }
    case Family::D: {
      if (rank < 4) break;
      ResGraph base = dynkin_graph({Family::D, rank, false});
      ResGraph g;
      g.add_vertex("E0");
      for (const auto& v : base.vertices()) g.add_vertex(v);
      for (int i = 0; i < base.size(); ++i)
        for (int j : base.neighbors(i)) g.set_edge(i + 1, j + 1, base.pairing(i, j));
      g.set_edge("E0", "E2");
      return g;
    }
    case Family::E: {
      if (rank < 6 || rank > 8) break;
      ResGraph base = e_graph(rank);
      ResGraph g;
      g.add_vertex("E0");
      for (const auto& v : base.vertices()) g.add_vertex(v);
      for (int i = 0; i < base.size(); ++i)
        for (int j : base.neighbors(i)) g.set_edge(i + 1, j + 1, base.pairing(i, j));
      g.set_edge("E0", rank == 6 ? "E2" : rank == 7 ? "E1" : "E8");
      return g;
    }
    case Family::B: {
      if (rank != 3) break;
      ResGraph g;
      g.add_vertex("E0");
      g.add_vertex("E1");
      g.add_vertex("E2");
      g.add_vertex("E3", -2, 0, 2);
      g.set_edge("E0", "E2");
      g.set_edge("E1", "E2");
      g.set_edge("E3", "E2");
      return g;
    }
    default:
      break;
  }
  throw DomainError("no extended template for family " + family_letter(f) + std::to_string(rank));
}

std::vector<long long> extended_multiplicities(Family f, int rank) {
  switch (f) {
    case Family::A: return std::vector<long long>(rank + 1, 1);
    case Family::D: {
      std::vector<long long> m(rank + 1, 2);
      m[0] = m[1] = m[rank - 1] = m[rank] = 1;
      return m;
    }
    case Family::E:
      if (rank == 6) return {1, 1, 2, 2, 3, 2, 1};
      if (rank == 7) return {1, 2, 2, 3, 4, 3, 2, 1};
      if (rank == 8) return {1, 2, 3, 4, 6, 5, 4, 3, 2};
      break;
    case Family::B:
      if (rank == 3) return {1, 1, 2, 1};
      break;
    default:
      break;
  }
  throw DomainError("no multiplicities for this family");
}

ResGraph elliptic19_graph(bool twisted) {
  ResGraph g;
  g.add_vertex("E0", -3);
  int leaves = twisted ? 4 : 5;
  for (int i = 1; i <= leaves; ++i) {
    bool pair = twisted && i == leaves;
    g.add_vertex("E" + std::to_string(i), -2, 0, pair ? 2 : 1);
    g.set_edge(0, i);
  }
  return g;
}

ResGraph unfold(const ResGraph& g) {
  ResGraph out;
  std::vector<std::vector<int>> copies(g.size());
  for (int i = 0; i < g.size(); ++i) {
    const auto& v = g.vertex(i);
    for (int c = 0; c < v.deg; ++c) {
      Vertex w = v;
      w.deg = 1;
      if (v.deg > 1) w.id = v.id + "#" + std::to_string(c);
      copies[i].push_back(out.add_vertex(w));
    }
  }
  for (int i = 0; i < g.size(); ++i)
    for (int j : g.neighbors(i)) {
      if (j < i) continue;
      const auto& big = copies[i].size() >= copies[j].size() ? copies[i] : copies[j];
      const auto& small = copies[i].size() >= copies[j].size() ? copies[j] : copies[i];
      for (std::size_t c = 0; c < big.size(); ++c) out.set_edge(big[c], small[c % small.size()], g.pairing(i, j));
    }
  return out;
}

namespace {

// Template vertex -> graph vertex, preserving all pairings and labels.
std::optional<std::vector<int>> isomorphism(const ResGraph& t, const ResGraph& g) {
  const int n = t.size();
  if (g.size() != n) return std::nullopt;
  if (n == 0) return std::vector<int>{};
  // Template vertices in BFS order, each after a neighbor when connected.
  std::vector<int> order, parent(n, -1), seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      for (int u : t.neighbors(v))
        if (!seen[u]) {
          seen[u] = 1;
          parent[u] = v;
          q.push(u);
        }
    }
  }
  auto same_label = [&](int tv, int gv) {
    const auto& a = t.vertex(tv);
    const auto& b = g.vertex(gv);
    return a.self_int == b.self_int && a.genus == b.genus && a.deg == b.deg && t.valence(tv) == g.valence(gv);
  };
  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> extend = [&](int k) -> bool {
    if (k == n) return true;
    int tv = order[k];
    std::vector<int> cands;
    if (parent[tv] >= 0)
      cands = g.neighbors(map[parent[tv]]);
    else
      for (int i = 0; i < n; ++i) cands.push_back(i);
    for (int gv : cands) {
      if (used[gv] || !same_label(tv, gv)) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        int tu = order[j];
        if (t.pairing(tv, tu) != g.pairing(gv, map[tu])) ok = false;
      }
      if (!ok) continue;
      map[tv] = gv;
      used[gv] = 1;
      if (extend(k + 1)) return true;
      used[gv] = 0;
      map[tv] = -1;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

SingularityType classify_split(const ResGraph& g) {
  const int n = g.size();
  std::vector<SingularityType> cands{{Family::A, n, false}};
  if (n >= 4) cands.push_back({Family::D, n, false});
  if (n >= 6 && n <= 8) cands.push_back({Family::E, n, false});
  if (n == 6) cands.push_back({Family::Elliptic19, 6, false});
  for (const auto& t : cands)
    if (isomorphism(dynkin_graph(t), g)) return t;
  return {};
}

FiberType fiber_split(const ResGraph& g) {
  const int n = g.size();
  std::vector<std::pair<Family, int>> cands;
  if (n >= 2) cands.emplace_back(Family::A, n - 1);
  if (n >= 5) cands.emplace_back(Family::D, n - 1);
  if (n >= 7 && n <= 9) cands.emplace_back(Family::E, n - 1);
  for (const auto& [f, r] : cands) {
    auto iso = isomorphism(extended_dynkin_graph(f, r), g);
    if (!iso) continue;
    FiberType ft;
    ft.family = f;
    ft.rank = r;
    auto mult = extended_multiplicities(f, r);
    ft.multiplicities.assign(n, 0);
    for (int i = 0; i < n; ++i) ft.multiplicities[(*iso)[i]] = mult[i];
    auto d = definiteness(g);
    if (!d.negative_semidefinite || d.radical.size() != 1 || d.radical[0] != ft.multiplicities)
      throw InternalCheckFailed("multiplicity vector of " + ft.name() + " does not span the radical");
    return ft;
  }
  return {};
}

}  // namespace

bool isomorphic(const ResGraph& a, const ResGraph& b) { return isomorphism(a, b).has_value(); }

SingularityType classify(const ResGraph& g) {
  if (!g.is_connected()) throw DomainError("classify needs a connected, nonempty graph");
  if (!g.is_twisted()) return classify_split(g);
  SingularityType geo = classify_split(unfold(g));
  SingularityType out;
  out.twisted = true;
  if (geo.family == Family::D && geo.rank == 4 && isomorphism(dynkin_graph({Family::B, 3, true}), g)) {
    out.family = Family::B;
    out.rank = 3;
  } else if (geo.family == Family::D && geo.rank == 4 && isomorphism(dynkin_graph({Family::G, 2, true}), g)) {
    out.family = Family::G;
    out.rank = 2;
  } else if (geo.family == Family::Elliptic19 && isomorphism(elliptic19_graph(true), g)) {
    out.family = Family::Elliptic19;
    out.rank = 6;
  }
  return out;
}

FiberType fiber_type(const ResGraph& g) {
  if (!g.is_connected()) throw DomainError("fiber_type needs a connected, nonempty graph");
  if (!g.is_twisted()) return fiber_split(g);
  FiberType geo = fiber_split(unfold(g));
  FiberType out;
  out.twisted = true;
  auto iso = isomorphism(extended_dynkin_graph(Family::B, 3), g);
  if (geo.family == Family::D && geo.rank == 4 && iso) {
    out.family = Family::B;
    out.rank = 3;
    auto mult = extended_multiplicities(Family::B, 3);
    out.multiplicities.assign(g.size(), 0);
    for (int i = 0; i < g.size(); ++i) out.multiplicities[(*iso)[i]] = mult[i];
  }
  return out;
}

long long connection_index(const SingularityType& t) {
  switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::D: return 4;
    case Family::E:
      if (t.rank == 6) return 3;
      if (t.rank == 7) return 2;
      if (t.rank == 8) return 1;
      break;
    case Family::B: return 2;  // Cartan matrix of B_n
    case Family::G: return 1;
    default: break;
  }
  throw DomainError("no connection index for type " + t.name());
}

SingularityType root_type(const FiberType& f) {
  switch (f.family) {
    case Family::A:
    case Family::D:
    case Family::E:
      return {f.family, f.rank, false};
    case Family::B:
      return {Family::B, f.rank, true};
    default:
      break;
  }
  throw DomainError("no root system under fiber type " + f.name());
}

int artin_invariant_from_data(const std::vector<SingularityType>& types, int n) {
  if (n < 0) throw DomainError("n must be >= 0");
  long long prod = 1;
  for (const auto& t : types) {
    if (t.twisted) throw DomainError("Artin invariant is only computed for split configurations; got " + t.name());
    long long d = connection_index(t);
    if (prod > (1LL << 40)) throw InconsistentInput("product of connection indices too large");
    prod *= d;
  }
  if (prod <= 0 || (prod & (prod - 1)) != 0)
    throw InconsistentInput("product of connection indices " + std::to_string(prod) + " is not a power of 2");
  int e = 0;
  while ((1LL << e) < prod) ++e;
  int twice_sigma = e - 2 * n;
  if (twice_sigma % 2 != 0) throw InconsistentInput("2-adic valuation " + std::to_string(e) + " has the wrong parity");
  int sigma = twice_sigma / 2;
  if (sigma < 1 || sigma > 10) throw InconsistentInput("sigma_0 = " + std::to_string(sigma) + " is outside 1..10");
  return sigma;
}

int artin_invariant_from_data(const std::vector<FiberType>& types, int n) {
  std::vector<SingularityType> roots;
  for (const auto& f : types) roots.push_back(root_type(f));
  return artin_invariant_from_data(roots, n);
}

int picard_tate_shioda(const std::vector<int>& component_counts) {
  int rho = 2;
  for (int c : component_counts) {
    if (c < 1) throw DomainError("a fiber has at least one component");
    rho += c - 1;
  }
  return rho;
}

}  // namespace cuspk3
