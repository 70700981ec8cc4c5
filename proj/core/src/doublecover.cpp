#include "cuspk3/doublecover.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "cuspk3/error.hpp"

namespace cuspk3 {
namespace {

MPoly X() { return MPoly::var("x"); }
MPoly Y() { return MPoly::var("y"); }

// Drop the monomials with all exponents even.  Those form a square t^2 and
// c -> c + t absorbs them.
MPoly odd_part(const MPoly& h) {
  MPoly out;
  for (const auto& [e, c] : h.terms()) {
    bool all_even = true;
    std::map<std::string, int> powers;
    for (std::size_t i = 0; i < e.size(); ++i) {
      powers[h.vars()[i]] = e[i];
      if (e[i] % 2 != 0) all_even = false;
    }
    if (!all_even) out += MPoly::monomial(c, powers);
  }
  return out;
}

MPoly normalize(const MPoly& h) {
  MPoly odd = odd_part(h);
  if (odd.is_zero()) throw DomainError("branch became a square: the cover is not reduced");
  return odd_part(squarefree_decompose(odd, 128).h);
}

FieldElem at_origin(const MPoly& p) {
  return p.evaluate_partial({{"x", FieldElem::zero()}, {"y", FieldElem::zero()}}).constant_term();
}

// Roots in F256 of a univariate polynomial; throws if some root lies outside.
std::vector<FieldElem> roots_f256(MPoly p, const std::string& var, const std::string& what) {
  if (p.is_zero()) throw InternalCheckFailed("roots of the zero polynomial requested");
  std::vector<FieldElem> out;
  for (auto b : elements(8)) {
    if (p.is_constant()) break;
    if (!p.evaluate({{var, b}}).is_zero()) continue;
    out.push_back(b);
    MPoly lin = MPoly::var(var) + MPoly(b);
    while (auto q = divide_exact(p, lin)) p = *q;
  }
  if (!p.is_constant()) throw DomainError(what + " not all defined over F256");
  return out;
}

bool defined_over(const MPoly& f, int level) {
  for (const auto& [e, c] : f.terms())
    if (!c.in_subfield(level)) return false;
  return true;
}

CoverEq from_relation(const KernelData& k, int level) {
  MPoly branch = k.relation + MPoly::var("c", 2);
  for (const auto& v : branch.vars())
    if (v != "a" && v != "b") throw InternalCheckFailed("relation is not of the form c^2 = f(a,b)");
  return CoverEq{branch, level};
}

void check_params(const ActionParams& p, int level) {
  if (!is_level(level)) throw DomainError("unknown field level " + std::to_string(level));
  if (!p.r.in_subfield(level) || !p.s.in_subfield(level))
    throw DomainError("parameters do not lie in " + level_name(level));
}

// Dense evaluator for a bivariate polynomial in a, b.
struct Evaluator {
  struct Term {
    int ea, eb;
    FieldElem c;
  };
  std::vector<Term> terms;
  explicit Evaluator(const MPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      Term t{0, 0, c};
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (p.vars()[i] == "a")
          t.ea = e[i];
        else if (p.vars()[i] == "b")
          t.eb = e[i];
        else
          throw DomainError("branch polynomial may only involve a and b");
      }
      terms.push_back(t);
    }
  }
  FieldElem operator()(FieldElem a, FieldElem b) const {
    FieldElem s = FieldElem::zero();
    for (const auto& t : terms) s += t.c * a.pow(t.ea) * b.pow(t.eb);
    return s;
  }
};

struct Step {
  bool inf = false;
  FieldElem beta;
};
using Address = std::vector<Step>;

std::string address_string(const Address& a) {
  std::string out;
  for (const auto& s : a) {
    if (s.inf) {
      out += "/y";
    } else {
      char buf[16];
      std::snprintf(buf, sizeof buf, "/x=0x%02x", s.beta.raw());
      out += buf;
    }
  }
  return out;
}

struct Curve {
  int id;
  MPoly eq;  // plane curve through the local origin
};

class Resolver {
 public:
  explicit Resolver(int max_depth) : max_depth_(max_depth) {}

  void visit(const MPoly& h, const std::vector<Curve>& through, const Address& addr, int depth) {
    const int v = static_cast<int>(addresses_.size());
    addresses_.push_back(addr);
    BlowupNode node;
    node.address = address_string(addr);
    node.depth = depth;
    node.branch = h.to_string();
    node.order = h.order();
    node.vertex = "E" + std::to_string(v);
    for (const auto& c : through) node.curves_through.push_back("E" + std::to_string(c.id));
    if (node.order < 2) throw InternalCheckFailed("visited a smooth point at " + node.address);
    // The quadratic part of an odd branch is a multiple of xy.
    node.a1 = !h.coeff({{"x", 1}, {"y", 1}}).is_zero();
    nodes_.push_back(node);
    const std::size_t node_index = nodes_.size() - 1;

    if (nodes_[node_index].a1 || depth >= max_depth_) {
      if (!nodes_[node_index].a1) exceeded_ = true;
      for (const auto& c : through) add_edge(v, c.id);
      return;
    }
    generations_ = std::max(generations_, depth + 1);

    // Chart y -> x*y: exceptional curve x = 0.
    MPoly hx = h.substitute("y", X() * Y());
    if (hx.min_degree_in("x") < 2) throw InternalCheckFailed("branch of order < 2 at a blowup center");
    hx = normalize(hx.shift({{"x", -2}}));
    MPoly px = hx.derivative("x").substitute("x", MPoly()), py = hx.derivative("y").substitute("x", MPoly());
    if (px.is_zero() && py.is_zero())
      throw DomainError("exceptional curve at " + nodes_[node_index].address + " is singular along its length");
    MPoly sing = px.is_zero() ? py : py.is_zero() ? px : gcd(px, py);
    std::vector<FieldElem> sing_x;
    if (!sing.is_constant()) sing_x = roots_f256(sing, "y", "singular points");
    // Chart x -> x*y, only its origin is new.
    MPoly hy = h.substitute("x", X() * Y());
    hy = normalize(hy.shift({{"y", -2}}));
    bool sing_inf = at_origin(hy.derivative("x")).is_zero() && at_origin(hy.derivative("y")).is_zero();

    struct Transform {
      MPoly cx, cy;
      std::vector<FieldElem> meets_x;
      bool meets_inf;
    };
    std::vector<Transform> tr;
    for (const auto& c : through) {
      int m = c.eq.order();
      Transform t;
      t.cx = c.eq.substitute("y", X() * Y()).shift({{"x", -m}});
      t.cy = c.eq.substitute("x", X() * Y()).shift({{"y", -m}});
      MPoly on_e = t.cx.substitute("x", MPoly());
      if (!on_e.is_constant()) t.meets_x = roots_f256(on_e, "y", "curve intersections");
      t.meets_inf = at_origin(t.cy).is_zero();
      tr.push_back(std::move(t));
    }

    // Smooth intersection points become edges.
    auto is_sing_x = [&](FieldElem b) { return std::find(sing_x.begin(), sing_x.end(), b) != sing_x.end(); };
    std::map<std::pair<bool, std::uint8_t>, std::vector<int>> smooth_meets;
    for (std::size_t i = 0; i < through.size(); ++i) {
      for (auto b : tr[i].meets_x)
        if (!is_sing_x(b)) smooth_meets[{false, b.raw()}].push_back(through[i].id);
      if (tr[i].meets_inf && !sing_inf) smooth_meets[{true, 0}].push_back(through[i].id);
    }
    for (const auto& [pt, ids] : smooth_meets) {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        add_edge(v, ids[i]);
        for (std::size_t j = i + 1; j < ids.size(); ++j) add_edge(ids[i], ids[j]);
      }
    }

    for (auto b : sing_x) {
      std::vector<Curve> next{{v, X()}};
      for (std::size_t i = 0; i < through.size(); ++i)
        if (std::find(tr[i].meets_x.begin(), tr[i].meets_x.end(), b) != tr[i].meets_x.end())
          next.push_back({through[i].id, tr[i].cx.substitute("y", Y() + MPoly(b))});
      Address a = addr;
      a.push_back({false, b});
      visit(odd_part(hx.substitute("y", Y() + MPoly(b))), next, a, depth + 1);
    }
    if (sing_inf) {
      std::vector<Curve> next{{v, Y()}};
      for (std::size_t i = 0; i < through.size(); ++i)
        if (tr[i].meets_inf) next.push_back({through[i].id, tr[i].cy});
      Address a = addr;
      a.push_back({true, FieldElem::zero()});
      visit(odd_part(hy), next, a, depth + 1);
    }
  }

  void add_edge(int a, int b) { ++edges_[{std::min(a, b), std::max(a, b)}]; }

  const std::vector<Address>& addresses() const { return addresses_; }
  const std::map<std::pair<int, int>, long long>& edges() const { return edges_; }
  std::vector<BlowupNode>& nodes() { return nodes_; }
  bool exceeded() const { return exceeded_; }
  int generations() const { return generations_; }

 private:
  int max_depth_;
  std::vector<Address> addresses_;
  std::map<std::pair<int, int>, long long> edges_;
  std::vector<BlowupNode> nodes_;
  bool exceeded_ = false;
  int generations_ = 0;
};

std::string frobenius_key(const Address& a, int level) {
  Address b = a;
  for (auto& s : b)
    if (!s.inf) s.beta = s.beta.pow(1LL << level);
  return address_string(b);
}

}  // namespace

CoverEq quad_point_equation(const ActionParams& p, int level) {
  check_params(p, level);
  return from_relation(invariant_kernel_rank4(quad_chart(p)), level);
}

CoverEq fixed_point_equation(const ActionParams& p, int level) {
  check_params(p, level);
  return from_relation(invariant_kernel_rank4(fixed_chart(p)), level);
}

std::vector<CoverPoint> singular_points(const CoverEq& eq) {
  if (eq.f.is_zero()) throw DomainError("branch polynomial must be nonzero");
  if (!is_level(eq.level)) throw DomainError("unknown field level " + std::to_string(eq.level));
  MPoly fa = eq.f.derivative("a"), fb = eq.f.derivative("b");
  MPoly common = fa.is_zero() ? fb : fb.is_zero() ? fa : gcd(fa, fb);
  if (common.is_zero() || !common.is_constant())
    throw DomainError("singular locus of c^2 = " + eq.f.to_string() + " is positive-dimensional");
  Evaluator ea(fa), eb(fb);
  auto field = elements(8);
  std::set<std::pair<std::uint8_t, std::uint8_t>> found;
  for (auto a : field)
    for (auto b : field)
      if (ea(a, b).is_zero() && eb(a, b).is_zero()) found.insert({a.raw(), b.raw()});

  const long long q = 1LL << eq.level;
  std::vector<CoverPoint> out;
  std::set<std::pair<std::uint8_t, std::uint8_t>> done;
  for (const auto& [ra, rb] : found) {
    if (done.count({ra, rb})) continue;
    FieldElem a = field[ra], b = field[rb];
    CoverPoint pt;
    FieldElem x = a, y = b;
    do {
      pt.orbit.emplace_back(x, y);
      done.insert({x.raw(), y.raw()});
      x = x.pow(q);
      y = y.pow(q);
    } while (!(x == a && y == b));
    std::sort(pt.orbit.begin(), pt.orbit.end());
    pt.a = pt.orbit.front().first;
    pt.b = pt.orbit.front().second;
    pt.degree = static_cast<int>(pt.orbit.size());
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), [](const CoverPoint& l, const CoverPoint& r) {
    return std::make_pair(l.a, l.b) < std::make_pair(r.a, r.b);
  });
  return out;
}

BlowupResult blowup_classify(const CoverEq& eq, FieldElem a0, FieldElem b0, int max_depth) {
  if (eq.f.is_zero()) throw DomainError("branch polynomial must be nonzero");
  if (!is_level(eq.level)) throw DomainError("unknown field level " + std::to_string(eq.level));
  if (max_depth < 1) throw DomainError("max_depth must be >= 1");
  for (const auto& v : eq.f.vars())
    if (v != "a" && v != "b") throw DomainError("branch polynomial may only involve a and b");
  const int level = std::max({eq.level, a0.min_level(), b0.min_level()});
  if (!defined_over(eq.f, level)) throw DomainError("equation is not defined over " + level_name(level));

  MPoly h = eq.f.substitute(std::map<std::string, MPoly>{{"a", X() + MPoly(a0)}, {"b", Y() + MPoly(b0)}});
  MPoly hx = h.derivative("x"), hy = h.derivative("y");
  if (!at_origin(hx).is_zero() || !at_origin(hy).is_zero())
    throw DomainError("(" + a0.to_string() + ", " + b0.to_string() + ") is not a singular point");
  if (hx.is_zero() && hy.is_zero()) throw DomainError("branch polynomial is a square");
  MPoly common = hx.is_zero() ? hy : hy.is_zero() ? hx : gcd(hx, hy);
  if (!common.is_constant() && at_origin(common).is_zero())
    throw DomainError("a curve of singular points passes through the point");

  Resolver res(max_depth);
  res.visit(odd_part(h), {}, {}, 0);

  BlowupResult out;
  const auto& addrs = res.addresses();
  const int n = static_cast<int>(addrs.size());
  for (int i = 0; i < n; ++i) {
    out.geometric.add_vertex("E" + std::to_string(i));
    out.vertex_address["E" + std::to_string(i)] = address_string(addrs[i]);
  }
  for (const auto& [e, w] : res.edges()) out.geometric.set_edge(e.first, e.second, w);
  out.nodes = std::move(res.nodes());
  out.generations = res.generations();

  // Fold Frobenius orbits of curves.
  std::map<std::string, int> by_key;
  for (int i = 0; i < n; ++i) by_key[address_string(addrs[i])] = i;
  std::vector<int> orbit_of(n, -1);
  std::vector<std::vector<int>> orbits;
  for (int i = 0; i < n; ++i) {
    if (orbit_of[i] >= 0) continue;
    std::vector<int> orbit{i};
    orbit_of[i] = static_cast<int>(orbits.size());
    Address cur = addrs[i];
    while (true) {
      std::string key = frobenius_key(cur, level);
      auto it = by_key.find(key);
      if (it == by_key.end()) throw InternalCheckFailed("Frobenius image of a curve is missing");
      int j = it->second;
      if (j == i) break;
      orbit.push_back(j);
      orbit_of[j] = orbit_of[i];
      cur = addrs[j];
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(orbit);
  }
  for (const auto& o : orbits) out.graph.add_vertex("E" + std::to_string(o.front()), -2, 0, static_cast<int>(o.size()));
  for (std::size_t a = 0; a < orbits.size(); ++a)
    for (std::size_t b = a + 1; b < orbits.size(); ++b) {
      const auto& big = orbits[a].size() >= orbits[b].size() ? orbits[a] : orbits[b];
      const auto& small = orbits[a].size() >= orbits[b].size() ? orbits[b] : orbits[a];
      long long w = 0;
      for (int u : small) w += out.geometric.pairing(big.front(), u);
      if (w) out.graph.set_edge(static_cast<int>(a), static_cast<int>(b), w);
    }

  ResGraph shape = elliptic19_graph(out.graph.is_twisted());
  ResGraph shape2;
  for (const auto& v : shape.vertices()) shape2.add_vertex(v.id, -2, v.genus, v.deg);
  for (int i = 0; i < shape.size(); ++i)
    for (int j : shape.neighbors(i))
      if (i < j) shape2.set_edge(i, j, shape.pairing(i, j));
  out.elliptic19_shape = isomorphic(shape2, out.graph);

  if (res.exceeded()) {
    out.note = "maximal blowup depth " + std::to_string(max_depth) + " exceeded";
    return out;
  }
  if (!is_negative_definite(out.geometric)) {
    out.note = "the (-2)-configuration is not negative definite: not a rational double point";
    return out;
  }
  out.type = classify(out.graph);
  if (!out.type.is_rdp()) {
    out.note = "no Dynkin template matches the exceptional configuration";
    return out;
  }
  SingularityType geo = classify(out.geometric);
  long long det = determinant(out.geometric.matrix());
  if ((det < 0 ? -det : det) != connection_index(geo))
    throw InternalCheckFailed("|det| of the " + geo.name() + " configuration differs from its connection index");
  out.rdp = true;
  return out;
}

}  // namespace cuspk3
