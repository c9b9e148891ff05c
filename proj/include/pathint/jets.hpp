#pragma once

// Truncated Taylor data at a point, kept as derivative tensors (f^(n), not
// f^(n)/n!): ActionJet for scalar actions expanded at a critical point,
// MapJet for origin-fixing maps / vector fields (one tensor per output
// component and order). Plus exact linear algebra over the scalar ring:
// inverse, determinant, and (for rationals) the Sylvester signature.

#include <utility>
#include <vector>

#include "pathint/rational.hpp"
#include "pathint/tensor.hpp"

namespace pathint {

template <class S>
using Matrix = std::vector<std::vector<S>>;

template <class S>
Matrix<S> identity_matrix(int d) {
  Matrix<S> m(d, std::vector<S>(d, S(0)));
  for (int i = 0; i < d; ++i) m[i][i] = S(1);
  return m;
}

// Gauss-Jordan inverse. Throws NotInvertible when no unit pivot exists.
template <class S>
Matrix<S> matrix_inverse(Matrix<S> m) {
  int d = static_cast<int>(m.size());
  Matrix<S> inv = identity_matrix<S>(d);
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r)
      if (is_unit(m[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) throw NotInvertible("matrix has no unit pivot");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    S p = m[col][col];
    for (int c = 0; c < d; ++c) {
      m[col][c] /= p;
      inv[col][c] /= p;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col || is_zero(m[r][col])) continue;
      S f = m[r][col];
      for (int c = 0; c < d; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

template <class S>
S matrix_determinant(Matrix<S> m) {
  int d = static_cast<int>(m.size());
  S det{1};
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r)
      if (is_unit(m[r][col])) {
        piv = r;
        break;
      }
    if (piv < 0) return S(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    S p = m[col][col];
    for (int r = col + 1; r < d; ++r) {
      if (is_zero(m[r][col])) continue;
      S f = m[r][col] / p;
      for (int c = col; c < d; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

// Signature (dim+ minus dim-) of a nondegenerate symmetric rational matrix by
// exact congruence diagonalization (Sylvester's law of inertia).
inline int matrix_signature(Matrix<Rational> m) {
  int d = static_cast<int>(m.size());
  int sig = 0;
  for (int k = 0; k < d; ++k) {
    if (m[k][k].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < d; ++r)
        if (!m[r][r].is_zero()) {
          swap_row = r;
          break;
        }
      if (swap_row >= 0) {
        // Congruence by a transposition: swap rows and columns k, swap_row.
        std::swap(m[k], m[swap_row]);
        for (int r = 0; r < d; ++r) std::swap(m[r][k], m[r][swap_row]);
      } else {
        // All remaining diagonal entries vanish; use an off-diagonal entry:
        // adding row/col j to row/col k puts 2*m[k][j] on the diagonal.
        int j = -1;
        for (int c = k + 1; c < d; ++c)
          if (!m[k][c].is_zero()) {
            j = c;
            break;
          }
        if (j < 0) throw DegenerateCriticalPoint("singular symmetric matrix");
        for (int c = 0; c < d; ++c) m[k][c] += m[j][c];
        for (int r = 0; r < d; ++r) m[r][k] += m[r][j];
      }
    }
    sig += m[k][k].sign();
    // Clear row/column k by congruence.
    for (int r = k + 1; r < d; ++r) {
      if (m[r][k].is_zero()) continue;
      Rational f = m[r][k] / m[k][k];
      for (int c = 0; c < d; ++c) m[r][c] -= f * m[k][c];
      for (int c = 0; c < d; ++c) m[c][r] -= f * m[c][k];
    }
  }
  return sig;
}

template <class S>
class ActionJet {
 public:
  ActionJet(int dim, int order, S value_at_critical = S(0))
      : dim_(dim), order_(order), value_(std::move(value_at_critical)) {
    if (dim < 1) throw std::invalid_argument("jet dimension must be >= 1");
    if (order < 2) throw std::invalid_argument("action jet order must be >= 2");
    coeffs_.reserve(order + 1);
    for (int n = 0; n <= order; ++n) coeffs_.emplace_back(dim, n);
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  const S& value_at_critical() const { return value_; }

  // n-th derivative tensor, n in 1..order. coefficient(1) stays zero at a
  // critical point; ProblemFile parsing enforces that.
  const SymmetricTensor<S>& coefficient(int n) const {
    require_order(n);
    return coeffs_[n];
  }
  SymmetricTensor<S>& coefficient(int n) {
    require_order(n);
    return coeffs_[n];
  }

  Matrix<S> hessian_matrix() const {
    Matrix<S> h(dim_, std::vector<S>(dim_, S(0)));
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) h[i][j] = coeffs_[2].get({i, j});
    return h;
  }

  // Exact truncated Taylor value: value + sum_n f^(n)[x..x]/n!.
  S evaluate(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != dim_)
      throw std::invalid_argument("evaluate: point dimension mismatch");
    S total = value_;
    for (int n = 1; n <= order_; ++n) {
      if (coeffs_[n].is_zero_tensor()) continue;
      S term{0};
      for (const auto& [idx, v] : coeffs_[n].entries()) {
        S mono = v * arrangement_scalar<S>(idx);
        for (int i : idx) mono *= x[i];
        term += mono;
      }
      total += term / factorial_scalar<S>(n);
    }
    return total;
  }

  friend bool operator==(const ActionJet& a, const ActionJet& b) {
    if (a.dim_ != b.dim_ || a.order_ != b.order_ || a.value_ != b.value_)
      return false;
    for (int n = 1; n <= a.order_; ++n)
      if (a.coeffs_[n] != b.coeffs_[n]) return false;
    return true;
  }
  friend bool operator!=(const ActionJet& a, const ActionJet& b) {
    return !(a == b);
  }

 private:
  void require_order(int n) const {
    if (n < 1 || n > order_)
      throw TruncationExceeded("jet coefficient order " + std::to_string(n) +
                               " outside truncation " +
                               std::to_string(order_));
  }

  int dim_;
  int order_;
  S value_;
  std::vector<SymmetricTensor<S>> coeffs_;
};

// Origin-fixing map (or vector field): for each order n >= 1 and each output
// component a, a symmetric n-form. The linear part doubles as a d x d matrix.
template <class S>
class MapJet {
 public:
  MapJet(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1) throw std::invalid_argument("jet dimension must be >= 1");
    if (order < 1) throw std::invalid_argument("map jet order must be >= 1");
    comps_.assign(dim, {});
    for (int a = 0; a < dim; ++a) {
      comps_[a].reserve(order + 1);
      for (int n = 0; n <= order; ++n) comps_[a].emplace_back(dim, n);
    }
  }

  static MapJet identity(int dim, int order) {
    MapJet g(dim, order);
    for (int a = 0; a < dim; ++a) g.comps_[a][1].set({a}, S(1));
    return g;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }

  const SymmetricTensor<S>& coefficient(int component, int n) const {
    require(component, n);
    return comps_[component][n];
  }
  SymmetricTensor<S>& coefficient(int component, int n) {
    require(component, n);
    return comps_[component][n];
  }

  Matrix<S> linear_part() const {
    Matrix<S> m(dim_, std::vector<S>(dim_, S(0)));
    for (int a = 0; a < dim_; ++a)
      for (int j = 0; j < dim_; ++j) m[a][j] = comps_[a][1].get({j});
    return m;
  }

  bool linear_part_is_identity() const {
    for (int a = 0; a < dim_; ++a)
      for (int j = 0; j < dim_; ++j)
        if (comps_[a][1].get({j}) != (a == j ? S(1) : S(0))) return false;
    return true;
  }

  std::vector<S> evaluate(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != dim_)
      throw std::invalid_argument("evaluate: point dimension mismatch");
    std::vector<S> out(dim_, S(0));
    for (int a = 0; a < dim_; ++a) {
      S total{0};
      for (int n = 1; n <= order_; ++n) {
        if (comps_[a][n].is_zero_tensor()) continue;
        S term{0};
        for (const auto& [idx, v] : comps_[a][n].entries()) {
          S mono = v * arrangement_scalar<S>(idx);
          for (int i : idx) mono *= x[i];
          term += mono;
        }
        total += term / factorial_scalar<S>(n);
      }
      out[a] = std::move(total);
    }
    return out;
  }

  friend bool operator==(const MapJet& a, const MapJet& b) {
    if (a.dim_ != b.dim_ || a.order_ != b.order_) return false;
    for (int c = 0; c < a.dim_; ++c)
      for (int n = 1; n <= a.order_; ++n)
        if (a.comps_[c][n] != b.comps_[c][n]) return false;
    return true;
  }
  friend bool operator!=(const MapJet& a, const MapJet& b) { return !(a == b); }

 private:
  void require(int component, int n) const {
    if (component < 0 || component >= dim_)
      throw std::invalid_argument("map component out of range");
    if (n < 1 || n > order_)
      throw TruncationExceeded("map coefficient order " + std::to_string(n) +
                               " outside truncation " +
                               std::to_string(order_));
  }

  int dim_;
  int order_;
  std::vector<std::vector<SymmetricTensor<S>>> comps_;
};

// ---- spec'd jet operations -------------------------------------------------

template <class S>
Matrix<S> hessian_inverse(const ActionJet<S>& action) {
  try {
    return matrix_inverse(action.hessian_matrix());
  } catch (const NotInvertible&) {
    throw DegenerateCriticalPoint("Hessian is singular");
  }
}

template <class S>
S hessian_determinant(const ActionJet<S>& action) {
  return matrix_determinant(action.hessian_matrix());
}

inline int hessian_signature(const ActionJet<Rational>& action) {
  return matrix_signature(action.hessian_matrix());
}

}  // namespace pathint
