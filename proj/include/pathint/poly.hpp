#pragma once

// Sparse multivariate polynomials over an exact scalar ring. These back the
// oracle computations and the brute-force substitution reference against
// which the jet calculus is property-tested; they share no code with the
// diagram engine.

#include <map>
#include <stdexcept>
#include <vector>

#include "pathint/jets.hpp"
#include "pathint/rational.hpp"
#include "pathint/tensor.hpp"

namespace pathint {

using Exponent = std::vector<int>;  // one exponent per variable

template <class S>
class Polynomial {
 public:
  explicit Polynomial(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("polynomial dim must be >= 1");
  }

  static Polynomial constant(int dim, S c) {
    Polynomial p(dim);
    if (!is_zero(c)) p.terms_[Exponent(dim, 0)] = std::move(c);
    return p;
  }
  static Polynomial variable(int dim, int var) {
    Polynomial p(dim);
    Exponent e(dim, 0);
    e[var] = 1;
    p.terms_[e] = S(1);
    return p;
  }

  int dim() const { return dim_; }
  const std::map<Exponent, S>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total(e));
    return d;
  }

  S constant_term() const {
    auto it = terms_.find(Exponent(dim_, 0));
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Exponent& e, const S& c) {
    if (static_cast<int>(e.size()) != dim_)
      throw std::invalid_argument("exponent size mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_[e] = c;
    } else {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  // Product; terms above max_degree are dropped when max_degree >= 0.
  Polynomial multiply(const Polynomial& o, int max_degree = -1) const {
    shape(o);
    Polynomial out(dim_);
    for (const auto& [ea, ca] : terms_) {
      int da = total(ea);
      for (const auto& [eb, cb] : o.terms_) {
        if (max_degree >= 0 && da + total(eb) > max_degree) continue;
        Exponent e(dim_);
        for (int i = 0; i < dim_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  Polynomial pow(int k, int max_degree = -1) const {
    Polynomial out = constant(dim_, S(1));
    for (int i = 0; i < k; ++i) out = out.multiply(*this, max_degree);
    return out;
  }

  Polynomial derivative(int var) const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent d = e;
      --d[var];
      out.add_term(d, c * S(e[var]));
    }
    return out;
  }

  Polynomial truncate(int max_degree) const {
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_)
      if (total(e) <= max_degree) out.terms_[e] = c;
    return out;
  }

  template <class T>
  T evaluate(const std::vector<T>& x, T (*lift)(const S&)) const {
    T acc{};
    for (const auto& [e, c] : terms_) {
      T t = lift(c);
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < e[i]; ++k) t = t * x[i];
      acc = acc + t;
    }
    return acc;
  }

  S evaluate_exact(const std::vector<S>& x) const {
    S acc{0};
    for (const auto& [e, c] : terms_) {
      S t = c;
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      acc += t;
    }
    return acc;
  }

  // Substitute polynomial maps for the variables (brute-force composition).
  Polynomial compose(const std::vector<Polynomial>& subs,
                     int max_degree) const {
    if (static_cast<int>(subs.size()) != dim_)
      throw std::invalid_argument("compose: one substitution per variable");
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
      Polynomial term = constant(dim_, c);
      for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < e[i]; ++k)
          term = term.multiply(subs[i], max_degree);
      out += term;
    }
    return out;
  }

 private:
  static int total(const Exponent& e) {
    int t = 0;
    for (int v : e) t += v;
    return t;
  }
  void shape(const Polynomial& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("polynomial dim mismatch");
  }

  int dim_;
  std::map<Exponent, S> terms_;
};

// Monomial coefficients from derivative tensors: coeff(alpha) =
// tensor(alpha) / prod(alpha_i!). Includes orders from `from` to the jet's
// truncation order.
template <class S>
Polynomial<S> polynomial_from_action(const ActionJet<S>& a, int from = 2) {
  Polynomial<S> p(a.dim());
  for (int n = from; n <= a.order(); ++n) {
    for (const auto& [idx, v] : a.coefficient(n).entries()) {
      Exponent e(a.dim(), 0);
      for (int i : idx) ++e[i];
      S denom{1};
      for (int i = 0; i < a.dim(); ++i) denom *= factorial_scalar<S>(e[i]);
      p.add_term(e, v / denom);
    }
  }
  return p;
}

template <class S>
Polynomial<S> polynomial_from_map_component(const MapJet<S>& g, int component) {
  Polynomial<S> p(g.dim());
  for (int n = 1; n <= g.order(); ++n) {
    for (const auto& [idx, v] : g.coefficient(component, n).entries()) {
      Exponent e(g.dim(), 0);
      for (int i : idx) ++e[i];
      S denom{1};
      for (int i = 0; i < g.dim(); ++i) denom *= factorial_scalar<S>(e[i]);
      p.add_term(e, v / denom);
    }
  }
  return p;
}

// Back-conversion: derivative tensor entries from monomial coefficients,
// tensor(alpha) = coeff(alpha) * prod(alpha_i!).
template <class S>
ActionJet<S> action_from_polynomial(const Polynomial<S>& p, int dim, int order,
                                    S value_at_critical = S(0)) {
  ActionJet<S> a(dim, order, std::move(value_at_critical));
  for (const auto& [e, c] : p.terms()) {
    int n = 0;
    for (int v : e) n += v;
    if (n < 1 || n > order) continue;
    MultiIndex idx;
    for (int i = 0; i < dim; ++i)
      for (int k = 0; k < e[i]; ++k) idx.push_back(i);
    S scale{1};
    for (int i = 0; i < dim; ++i) scale *= factorial_scalar<S>(e[i]);
    a.coefficient(n).add(idx, c * scale);
  }
  return a;
}

}  // namespace pathint
