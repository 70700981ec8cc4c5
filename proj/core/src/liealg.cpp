#include "cuspk3/liealg.hpp"

#include <cmath>
#include <random>

#include "cuspk3/error.hpp"

namespace cuspk3 {

RLieAlg::RLieAlg(int dim, std::vector<std::string> basis_names)
    : dim_(dim), names_(std::move(basis_names)) {
  if (dim < 0) throw DomainError("negative dimension");
  if (names_.empty())
    for (int i = 0; i < dim; ++i) names_.push_back("e" + std::to_string(i));
  if (static_cast<int>(names_.size()) != dim) throw DomainError("basis name count does not match dimension");
  c_.assign(dim, std::vector<Vec>(dim, Vec(dim)));
  p_.assign(dim, Vec(dim));
}

void RLieAlg::check(const Vec& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DomainError("vector of length " + std::to_string(x.size()) + " in a " + std::to_string(dim_) +
                      "-dimensional algebra");
}

void RLieAlg::check_index(int i) const {
  if (i < 0 || i >= dim_) throw DomainError("basis index " + std::to_string(i) + " out of range");
}

void RLieAlg::set_bracket(int i, int j, const Vec& value) {
  check_index(i);
  check_index(j);
  check(value);
  c_[i][j] = value;
  c_[j][i] = value;
}

void RLieAlg::set_pmap(int i, const Vec& value) {
  check_index(i);
  check(value);
  p_[i] = value;
}

Vec RLieAlg::basis_vector(int i) const {
  check_index(i);
  Vec v(dim_, FieldElem::zero());
  v[i] = FieldElem::one();
  return v;
}

Vec RLieAlg::bracket(const Vec& x, const Vec& y) const {
  check(x);
  check(y);
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      FieldElem w = x[i] * y[j];
      if (w.is_zero()) continue;
      for (int l = 0; l < dim_; ++l) out[l] += w * c_[i][j][l];
    }
  }
  return out;
}

Vec RLieAlg::pmap(const Vec& x) const {
  check(x);
  Vec out(dim_);
  for (int i = 0; i < dim_; ++i) {
    FieldElem sq = x[i] * x[i];
    if (!sq.is_zero())
      for (int l = 0; l < dim_; ++l) out[l] += sq * p_[i][l];
    for (int j = i + 1; j < dim_; ++j) {
      FieldElem w = x[i] * x[j];
      if (w.is_zero()) continue;
      for (int l = 0; l < dim_; ++l) out[l] += w * c_[i][j][l];
    }
  }
  return out;
}

RLieAlg cusp_lie_algebra() {
  RLieAlg g(4, {"u^-2*D_u", "D_u", "u*D_u", "u^2*D_u"});
  // [u D_u, u^(2i) D_u] = u^(2i) D_u; the brackets among the even powers vanish.
  for (int i : {0, 1, 3}) g.set_bracket(2, i, g.basis_vector(i));
  // (u D_u)^[2] = u D_u; the derived ideal squares to zero.
  g.set_pmap(2, g.basis_vector(2));
  return g;
}

std::vector<Vec> all_vectors(int dim, int k) {
  auto field = elements(k);
  const std::size_t q = field.size();
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= q;
    if (total > (1u << 24)) throw DomainError("too many vectors to enumerate");
  }
  std::vector<Vec> out;
  out.reserve(total);
  for (std::size_t n = 0; n < total; ++n) {
    Vec v(dim);
    std::size_t m = n;
    for (int i = 0; i < dim; ++i) {
      v[i] = field[m % q];
      m /= q;
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

Vec add(const Vec& a, const Vec& b) {
  Vec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Vec scale(FieldElem l, const Vec& a) {
  Vec out = a;
  for (auto& x : out) x = l * x;
  return out;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

std::string vec_to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].to_string();
  }
  return out + ")";
}

AxiomReport verify_pmap_axioms(const RLieAlg& alg, int k) {
  AxiomReport rep;
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag && rep.first_failure.empty()) rep.first_failure = what;
    flag = false;
  };
  const int n = alg.dim();
  for (int i = 0; i < n; ++i) {
    if (!is_zero_vec(alg.basis_bracket(i, i))) fail(rep.alternating, "[e" + std::to_string(i) + ",e" + std::to_string(i) + "] != 0");
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        auto ei = alg.basis_vector(i), ej = alg.basis_vector(j), el = alg.basis_vector(l);
        Vec jac = add(add(alg.bracket(ei, alg.bracket(ej, el)), alg.bracket(ej, alg.bracket(el, ei))),
                      alg.bracket(el, alg.bracket(ei, ej)));
        if (!is_zero_vec(jac))
          fail(rep.jacobi, "Jacobi fails on (e" + std::to_string(i) + ",e" + std::to_string(j) + ",e" + std::to_string(l) + ")");
      }
  }

  auto check_pair = [&](const Vec& x, const Vec& y) {
    ++rep.pairs_tested;
    Vec px = alg.pmap(x);
    if (alg.bracket(px, y) != alg.bracket(x, alg.bracket(x, y)))
      fail(rep.adjoint, "[x^[2],y] != [x,[x,y]] at x=" + vec_to_string(x) + ", y=" + vec_to_string(y));
    if (alg.pmap(add(x, y)) != add(add(px, alg.bracket(x, y)), alg.pmap(y)))
      fail(rep.sum_rule, "sum rule fails at x=" + vec_to_string(x) + ", y=" + vec_to_string(y));
  };

  const double space = std::pow(2.0, k * n);
  auto field = elements(k);
  if (space * space <= static_cast<double>(1 << 20)) {
    rep.exhaustive = true;
    auto vs = all_vectors(n, k);
    for (const auto& x : vs) {
      for (auto l : field)
        if (alg.pmap(scale(l, x)) != scale(l * l, alg.pmap(x)))
          fail(rep.scalar, "(l x)^[2] != l^2 x^[2] at x=" + vec_to_string(x));
      for (const auto& y : vs) check_pair(x, y);
    }
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<unsigned> coin(0, (1u << k) - 1);
    auto random_vec = [&] {
      Vec v(n);
      for (auto& x : v) x = FieldElem::from_mask(k, coin(rng));
      return v;
    };
    for (int t = 0; t < (1 << 16); ++t) {
      Vec x = random_vec(), y = random_vec();
      FieldElem l = FieldElem::from_mask(k, coin(rng));
      if (alg.pmap(scale(l, x)) != scale(l * l, alg.pmap(x)))
        fail(rep.scalar, "(l x)^[2] != l^2 x^[2] at x=" + vec_to_string(x));
      check_pair(x, y);
    }
  }
  return rep;
}

std::vector<Vec> square_zero_cone(const RLieAlg& alg, int k) {
  if (k * alg.dim() > 16) throw DomainError("square_zero_cone: q^dim exceeds 2^16");
  std::vector<Vec> out;
  for (auto& v : all_vectors(alg.dim(), k))
    if (is_zero_vec(alg.pmap(v))) out.push_back(std::move(v));
  return out;
}

}  // namespace cuspk3
