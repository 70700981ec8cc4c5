#include "cuspk3/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "cuspk3/error.hpp"
#include "upoly.hpp"

namespace cuspk3 {
namespace {

// Exponents beyond this are treated as overflow; nothing here gets near it.
constexpr long long kMaxExponent = 1 << 20;

int checked_exp(long long e) {
  if (e > kMaxExponent || e < -kMaxExponent) throw DomainError("exponent overflow");
  return static_cast<int>(e);
}

std::vector<std::string> union_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

MPoly::MPoly(FieldElem c) {
  if (!c.is_zero()) terms_.emplace(Exps{}, c);
}

MPoly::MPoly(std::vector<std::string> vars, std::map<Exps, FieldElem> terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {
  normalize();
}

MPoly MPoly::var(const std::string& name, int power) {
  return MPoly({name}, {{Exps{power}, FieldElem::one()}});
}

MPoly MPoly::monomial(FieldElem c, const std::map<std::string, int>& powers) {
  std::vector<std::string> vars;
  Exps e;
  for (const auto& [name, p] : powers) {
    vars.push_back(name);
    e.push_back(p);
  }
  if (c.is_zero()) return {};
  return MPoly(std::move(vars), {{e, c}});
}

void MPoly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) return;
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) vars.push_back(vars_[i]);
  std::map<Exps, FieldElem> terms;
  for (const auto& [e, c] : terms_) {
    Exps ne;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (used[i]) ne.push_back(e[i]);
    terms.emplace(std::move(ne), c);
  }
  vars_ = std::move(vars);
  terms_ = std::move(terms);
}

MPoly MPoly::aligned(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> pos(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::lower_bound(vars.begin(), vars.end(), vars_[i]);
    pos[i] = static_cast<int>(it - vars.begin());
  }
  MPoly out;
  out.vars_ = vars;
  for (const auto& [e, c] : terms_) {
    Exps ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    out.terms_.emplace(std::move(ne), c);
  }
  return out;  // deliberately not normalized: callers rely on the layout
}

int MPoly::index_of(const std::string& name) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), name);
  if (it == vars_.end() || *it != name) return -1;
  return static_cast<int>(it - vars_.begin());
}

bool MPoly::has_var(const std::string& name) const { return index_of(name) >= 0; }

bool MPoly::has_negative_exponents() const {
  for (const auto& [e, c] : terms_)
    for (int x : e)
      if (x < 0) return true;
  return false;
}

FieldElem MPoly::constant_term() const {
  auto it = terms_.find(Exps(vars_.size(), 0));
  return it == terms_.end() ? FieldElem{} : it->second;
}

FieldElem MPoly::coeff(const std::map<std::string, int>& powers) const {
  Exps e(vars_.size(), 0);
  for (const auto& [name, p] : powers) {
    int i = index_of(name);
    if (i < 0) {
      if (p != 0) return {};
      continue;
    }
    e[i] = p;
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElem{} : it->second;
}

int MPoly::coeff_level() const {
  int k = 1;
  for (const auto& [e, c] : terms_) k = std::max(k, c.level());
  return k;
}

int MPoly::degree_in(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) return 0;
  int d = terms_.empty() ? 0 : terms_.begin()->first[i];
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

int MPoly::min_degree_in(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) return 0;
  int d = terms_.empty() ? 0 : terms_.begin()->first[i];
  for (const auto& [e, c] : terms_) d = std::min(d, e[i]);
  return d;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int MPoly::order() const {
  if (terms_.empty()) return -1;
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = first ? s : std::min(d, s);
    first = false;
  }
  return d;
}

std::pair<Exps, FieldElem> MPoly::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of zero");
  return *terms_.rbegin();
}

std::map<int, MPoly> MPoly::as_univariate(const std::string& name) const {
  std::map<int, MPoly> out;
  int i = index_of(name);
  if (i < 0) {
    if (!is_zero()) out.emplace(0, *this);
    return out;
  }
  std::map<int, std::map<Exps, FieldElem>> buckets;
  for (const auto& [e, c] : terms_) {
    Exps ne = e;
    ne[i] = 0;
    buckets[e[i]].emplace(std::move(ne), c);
  }
  for (auto& [d, t] : buckets) out.emplace(d, MPoly(vars_, std::move(t)));
  return out;
}

MPoly MPoly::derivative(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) return {};
  std::map<Exps, FieldElem> out;
  for (const auto& [e, c] : terms_) {
    // d/dx x^e = e x^(e-1), and only the parity of e survives in char 2.
    if ((e[i] & 1) == 0) continue;
    Exps ne = e;
    ne[i] -= 1;
    out.emplace(std::move(ne), c);
  }
  return MPoly(vars_, std::move(out));
}

MPoly MPoly::substitute(const std::string& name, const MPoly& value) const {
  return substitute(std::map<std::string, MPoly>{{name, value}});
}

MPoly MPoly::substitute(const std::map<std::string, MPoly>& values) const {
  std::vector<int> idx;
  std::vector<const MPoly*> vals;
  for (const auto& [name, v] : values) {
    int i = index_of(name);
    if (i < 0) continue;
    idx.push_back(i);
    vals.push_back(&v);
  }
  if (idx.empty()) return *this;
  // Cache powers per substituted variable.
  std::vector<std::map<int, MPoly>> cache(idx.size());
  auto power = [&](std::size_t j, int e) -> const MPoly& {
    auto it = cache[j].find(e);
    if (it != cache[j].end()) return it->second;
    return cache[j].emplace(e, vals[j]->pow(e)).first->second;
  };
  MPoly out;
  for (const auto& [e, c] : terms_) {
    Exps rest = e;
    for (int i : idx) rest[i] = 0;
    MPoly term(vars_, {{rest, c}});
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (e[idx[j]] != 0) term = term * power(j, e[idx[j]]);
    out += term;
  }
  return out;
}

MPoly MPoly::evaluate_partial(const Assignment& values) const {
  std::map<std::string, MPoly> subs;
  for (const auto& [name, v] : values) subs.emplace(name, MPoly(v));
  return substitute(subs);
}

FieldElem MPoly::evaluate(const Assignment& values) const {
  std::vector<FieldElem> xs;
  for (const auto& name : vars_) {
    auto it = values.find(name);
    if (it == values.end()) throw DomainError("no value for variable '" + name + "'");
    xs.push_back(it->second);
  }
  FieldElem acc;
  for (const auto& [e, c] : terms_) {
    FieldElem t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= xs[i].pow(e[i]);
    acc += t;
  }
  return acc;
}

MPoly MPoly::rename(const std::map<std::string, std::string>& names) const {
  MPoly out;
  for (const auto& [e, c] : terms_) {
    std::map<std::string, int> powers;
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto it = names.find(vars_[i]);
      powers[it == names.end() ? vars_[i] : it->second] += e[i];
    }
    out += monomial(c, powers);
  }
  return out;
}

MPoly MPoly::pow(int e) const {
  if (e < 0) {
    if (terms_.size() != 1) throw DomainError("negative power of a polynomial with " + std::to_string(terms_.size()) + " terms");
    const auto& [ex, c] = *terms_.begin();
    Exps ne = ex;
    for (auto& x : ne) x = checked_exp(static_cast<long long>(x) * e);
    return MPoly(vars_, {{ne, c.pow(e)}});
  }
  MPoly result(FieldElem::one()), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) {
      // Squaring is additive in characteristic 2.
      std::map<Exps, FieldElem> sq;
      for (const auto& [ex, c] : base.terms_) {
        Exps ne = ex;
        for (auto& x : ne) x = checked_exp(2LL * x);
        sq.emplace(std::move(ne), c * c);
      }
      base = MPoly(base.vars_, std::move(sq));
    }
  }
  return result;
}

std::optional<MPoly> MPoly::sqrt() const {
  std::map<Exps, FieldElem> out;
  for (const auto& [e, c] : terms_) {
    Exps ne = e;
    for (auto& x : ne) {
      if (x % 2 != 0) return std::nullopt;
      x /= 2;
    }
    out.emplace(std::move(ne), c.sqrt());
  }
  return MPoly(vars_, std::move(out));
}

MPoly MPoly::shift(const std::map<std::string, int>& powers) const {
  return *this * monomial(FieldElem::one(), powers);
}

MPoly MPoly::scaled(FieldElem c) const {
  if (c.is_zero()) return {};
  std::map<Exps, FieldElem> out;
  for (const auto& [e, x] : terms_) out.emplace(e, x * c);
  return MPoly(vars_, std::move(out));
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading_term().second.inv());
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto vars = union_vars(a.vars_, b.vars_);
  MPoly x = a.aligned(vars);
  MPoly y = b.aligned(vars);
  for (const auto& [e, c] : y.terms_) {
    auto [it, inserted] = x.terms_.emplace(e, c);
    if (!inserted) it->second += c;
  }
  x.normalize();
  return x;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  auto vars = union_vars(a.vars_, b.vars_);
  MPoly x = a.aligned(vars);
  MPoly y = b.aligned(vars);
  std::map<Exps, FieldElem> out;
  Exps e(vars.size());
  for (const auto& [ea, ca] : x.terms_) {
    for (const auto& [eb, cb] : y.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_exp(static_cast<long long>(ea[i]) + eb[i]);
      auto [it, inserted] = out.emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return MPoly(std::move(vars), std::move(out));
}

bool operator==(const MPoly& a, const MPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

std::string MPoly::to_string(int k) const {
  if (terms_.empty()) return "0";
  if (k == 0) k = coeff_level();
  std::vector<std::pair<Exps, FieldElem>> order(terms_.begin(), terms_.end());
  auto deg = [](const Exps& e) {
    int s = 0;
    for (int x : e) s += x;
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](const auto& p, const auto& q) {
    int dp = deg(p.first), dq = deg(q.first);
    if (dp != dq) return dp > dq;
    return p.first > q.first;
  });
  std::string out;
  for (const auto& [e, c] : order) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (c.is_one() && mono.empty()) {
      out += "1";
    } else if (!c.is_one()) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "0x%x", c.mask(k));
      out += buf;
      if (!mono.empty()) out += "*";
    }
    out += mono;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(const std::string& text, int k) : s_(text), k_(k) {}

  MPoly parse() {
    MPoly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("polynomial '" + s_ + "', position " + std::to_string(i_) + ": " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char ch) {
    skip();
    if (i_ < s_.size() && s_[i_] == ch) {
      ++i_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    accept('+') || accept('-');  // a leading sign is harmless in characteristic 2
    MPoly p = term();
    while (accept('+') || accept('-')) p += term();
    return p;
  }
  MPoly term() {
    MPoly p = factor();
    while (accept('*')) p *= factor();
    return p;
  }
  MPoly factor() {
    MPoly base = primary();
    if (accept('^')) {
      skip();
      bool neg = accept('-');
      skip();
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) fail("expected an exponent");
      long long e = std::stoll(s_.substr(start, i_ - start));
      if (e > kMaxExponent) fail("exponent too large");
      base = base.pow(static_cast<int>(neg ? -e : e));
    }
    return base;
  }
  MPoly primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[i_];
    if (ch == '(') {
      ++i_;
      MPoly p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = i_;
      if (s_.compare(i_, 2, "0x") == 0 || s_.compare(i_, 2, "0X") == 0) i_ += 2;
      while (i_ < s_.size() && std::isxdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return MPoly(parse_field_elem(s_.substr(start, i_ - start), k_));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
        ++i_;
      std::string name = s_.substr(start, i_ - start);
      if (name == "omega") return MPoly(parse_field_elem(name, k_));
      return MPoly::var(name);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string s_;
  int k_;
  std::size_t i_ = 0;
};

}  // namespace

MPoly MPoly::parse(const std::string& text, int k) { return Parser(text, k).parse(); }

// ---------------------------------------------------------------------------
// Division and gcd

std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  if (f.is_zero()) return MPoly{};
  if (g.size() == 1) {
    const auto& [e, c] = g.leading_term();
    std::map<std::string, int> inv;
    for (std::size_t i = 0; i < e.size(); ++i) inv[g.vars()[i]] = -e[i];
    MPoly q = f.shift(inv).scaled(c.inv());
    bool laurent = f.has_negative_exponents() || g.has_negative_exponents();
    if (!laurent && q.has_negative_exponents()) return std::nullopt;
    return q;
  }
  if (f.has_negative_exponents() || g.has_negative_exponents())
    throw DomainError("exact division needs polynomial inputs");
  auto [lg, cg] = g.leading_term();
  MPoly r = f, q;
  FieldElem cgi = cg.inv();
  while (!r.is_zero()) {
    auto [lr, cr] = r.leading_term();
    // Compare in the union of both variable lists.
    std::map<std::string, int> m;
    for (std::size_t i = 0; i < lr.size(); ++i) m[r.vars()[i]] += lr[i];
    for (std::size_t i = 0; i < lg.size(); ++i) m[g.vars()[i]] -= lg[i];
    for (const auto& [name, e] : m)
      if (e < 0) return std::nullopt;
    MPoly t = MPoly::monomial(cr * cgi, m);
    q += t;
    MPoly before = r;
    r -= t * g;
    // The lex leading term always drops; guard against a mis-ordered comparison anyway.
    if (!r.is_zero() && r.vars() == before.vars() && !(r.leading_term().first < lr))
      throw InternalCheckFailed("division did not reduce the leading term");
  }
  return q;
}

namespace {

MPoly content_in(const MPoly& f, const std::string& x);

// Pseudo-remainder of a by b with respect to x.
MPoly prem(MPoly a, const MPoly& b, const std::string& x) {
  int db = b.degree_in(x);
  MPoly lb = b.as_univariate(x).rbegin()->second;
  while (!a.is_zero() && a.degree_in(x) >= db) {
    int da = a.degree_in(x);
    MPoly la = a.as_univariate(x).rbegin()->second;
    a = lb * a - la * MPoly::var(x, da - db) * b;
    if (a.degree_in(x) >= da && !a.is_zero()) throw InternalCheckFailed("pseudo-remainder did not reduce degree");
  }
  return a;
}

MPoly primitive_part(const MPoly& f, const std::string& x) {
  if (f.is_zero()) return f;
  auto q = divide_exact(f, content_in(f, x));
  if (!q) throw InternalCheckFailed("content does not divide polynomial");
  return *q;
}

MPoly content_in(const MPoly& f, const std::string& x) {
  MPoly c;
  for (const auto& [d, coef] : f.as_univariate(x)) {
    c = gcd(c, coef);
    if (c.is_constant() && !c.is_zero()) return MPoly(FieldElem::one());
  }
  return c;
}

}  // namespace

MPoly gcd(const MPoly& f, const MPoly& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.has_negative_exponents() || g.has_negative_exponents()) throw DomainError("gcd needs polynomial inputs");
  if (f.is_constant() || g.is_constant()) return MPoly(FieldElem::one());
  auto vars = union_vars(f.vars(), g.vars());
  const std::string& x = vars.front();
  if (!f.has_var(x)) return gcd(f, content_in(g, x));
  if (!g.has_var(x)) return gcd(content_in(f, x), g);
  MPoly c = gcd(content_in(f, x), content_in(g, x));
  MPoly a = primitive_part(f, x), b = primitive_part(g, x);
  if (a.degree_in(x) < b.degree_in(x)) std::swap(a, b);
  while (!b.is_zero() && b.has_var(x)) {
    MPoly r = prem(a, b, x);
    a = std::move(b);
    b = primitive_part(r, x);
  }
  // b == 0: a is the primitive gcd.  b free of x: the primitive parts are coprime.
  MPoly prim = b.is_zero() ? a : MPoly(FieldElem::one());
  return (c * prim).monic();
}

SquarefreeSplit squarefree_decompose(const MPoly& f, int max_degree) {
  if (f.is_zero()) throw DomainError("squarefree_decompose of zero");
  if (f.has_negative_exponents()) throw DomainError("squarefree_decompose needs a polynomial");
  if (f.total_degree() > max_degree)
    throw DomainError("total degree " + std::to_string(f.total_degree()) + " exceeds bound " + std::to_string(max_degree));
  MPoly g = f;
  for (const auto& x : f.vars()) g = gcd(g, f.derivative(x));
  g = g.monic();
  auto s = g.sqrt();
  if (!s) throw InternalCheckFailed("gcd of f and its partials is not a square: " + g.to_string());
  auto h = divide_exact(f, g);
  if (!h) throw InternalCheckFailed("square part does not divide f");
  return {*s, *h};
}

// ---------------------------------------------------------------------------
// Small factorization

MPoly Factorization::product() const {
  MPoly p(unit);
  for (const auto& [g, m] : factors) p *= g.pow(m);
  return p;
}

Factorization factor_small(const MPoly& f, int k) {
  if (f.is_zero()) throw DomainError("cannot factor zero");
  if (f.has_negative_exponents()) throw DomainError("factor_small needs a polynomial");
  for (const auto& [e, c] : f.terms())
    if (!c.in_subfield(k)) throw DomainError("coefficient " + std::to_string(c.raw()) + " not in " + level_name(k));
  if (f.total_degree() > 8) throw DomainError("factor_small: degree above 8");
  Factorization out;
  if (f.is_constant()) {
    out.unit = f.constant_term();
    return out;
  }
  const auto& vars = f.vars();
  bool homogeneous = false;
  if (vars.size() == 2) {
    int d = f.total_degree();
    homogeneous = f.order() == d;
    if (!homogeneous) throw DomainError("factor_small: bivariate input must be homogeneous");
  } else if (vars.size() > 2) {
    throw DomainError("factor_small: unsupported shape (more than two variables)");
  }
  const std::string& x = vars[0];
  detail::UPoly p;
  for (const auto& [e, c] : f.terms()) {
    auto i = static_cast<std::size_t>(e[0]);
    if (p.c.size() <= i) p.c.resize(i + 1);
    p.c[i] += c;
  }
  p.trim();
  out.unit = p.lead();
  for (const auto& [g, m] : detail::factor(p, k)) {
    MPoly q;
    int d = g.degree();
    for (int i = 0; i <= d; ++i) {
      if (g.c[i].is_zero()) continue;
      std::map<std::string, int> powers{{x, i}};
      if (homogeneous) powers[vars[1]] = d - i;
      q += MPoly::monomial(g.c[i], powers);
    }
    out.factors.emplace_back(q, m);
  }
  if (homogeneous) {
    int missing = f.total_degree() - p.degree();
    if (missing > 0) out.factors.emplace_back(MPoly::var(vars[1]), missing);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Derivations

Derivation Derivation::parse(const std::map<std::string, std::string>& coeffs, int k) {
  std::map<std::string, MPoly> c;
  for (const auto& [name, text] : coeffs) c.emplace(name, MPoly::parse(text, k));
  return Derivation(std::move(c));
}

MPoly Derivation::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? MPoly{} : it->second;
}

std::vector<std::string> Derivation::ring_vars() const {
  std::vector<std::string> out;
  for (const auto& [name, c] : coeffs_) out.push_back(name);
  return out;
}

MPoly Derivation::apply(const MPoly& f) const {
  MPoly out;
  for (const auto& [name, c] : coeffs_)
    if (!c.is_zero() && f.has_var(name)) out += c * f.derivative(name);
  return out;
}

bool Derivation::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& p) { return p.second.is_zero(); });
}

std::string Derivation::to_string() const {
  std::string out;
  for (const auto& [name, c] : coeffs_) {
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*D_" + name;
  }
  return out.empty() ? "0" : out;
}

bool is_p_closed(const Derivation& d) {
  for (const auto& name : d.ring_vars())
    if (!d.apply(d.apply(MPoly::var(name))).is_zero()) return false;
  return true;
}

}  // namespace cuspk3
