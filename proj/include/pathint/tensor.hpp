#pragma once

// SymmetricTensor<S>: one Taylor coefficient of a scalar function — a fully
// symmetric n-linear form on a d-dimensional space. Entries are stored only
// for sorted multi-indices; lookups for unsorted tuples resolve through the
// sorted representative, and missing entries read as zero.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "pathint/rational.hpp"

namespace pathint {

using MultiIndex = std::vector<int>;  // 0-based slot indices, sorted ascending

inline MultiIndex sorted_index(MultiIndex idx) {
  std::sort(idx.begin(), idx.end());
  return idx;
}

// All sorted multi-indices of the given order over {0..dim-1}, in
// lexicographic order (combinations with replacement).
inline std::vector<MultiIndex> all_sorted_indices(int dim, int order) {
  std::vector<MultiIndex> out;
  MultiIndex cur(order, 0);
  if (order == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(cur);
    int p = order - 1;
    while (p >= 0 && cur[p] == dim - 1) --p;
    if (p < 0) break;
    int v = cur[p] + 1;
    for (int q = p; q < order; ++q) cur[q] = v;
  }
  return out;
}

template <class S>
S factorial_scalar(int n) {
  S f{1};
  for (int i = 2; i <= n; ++i) f *= S(i);
  return f;
}

// Number of distinct orderings of a sorted multi-index (multinomial
// n!/prod(multiplicities!)), in the scalar ring.
template <class S>
S arrangement_scalar(const MultiIndex& idx) {
  S n = factorial_scalar<S>(static_cast<int>(idx.size()));
  int run = 1;
  for (std::size_t i = 1; i <= idx.size(); ++i) {
    if (i < idx.size() && idx[i] == idx[i - 1]) {
      ++run;
    } else {
      n /= factorial_scalar<S>(run);
      run = 1;
    }
  }
  return n;
}

inline Rational arrangement_count(const MultiIndex& idx) {
  return arrangement_scalar<Rational>(idx);
}

template <class S>
class SymmetricTensor {
 public:
  SymmetricTensor() : dim_(1), order_(0) {}
  SymmetricTensor(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1) throw std::invalid_argument("tensor dimension must be >= 1");
    if (order < 0) throw std::invalid_argument("tensor order must be >= 0");
  }

  int dim() const { return dim_; }
  int order() const { return order_; }

  const S& get(const MultiIndex& idx) const {
    check_index(idx);
    static const S kZero{};
    auto it = entries_.find(sorted_index(idx));
    return it == entries_.end() ? kZero : it->second;
  }

  void set(const MultiIndex& idx, S value) {
    check_index(idx);
    MultiIndex k = sorted_index(idx);
    if (is_zero(value))
      entries_.erase(k);
    else
      entries_[std::move(k)] = std::move(value);
  }

  void add(const MultiIndex& idx, const S& value) {
    check_index(idx);
    MultiIndex k = sorted_index(idx);
    auto it = entries_.find(k);
    if (it == entries_.end()) {
      if (!is_zero(value)) entries_[std::move(k)] = value;
    } else {
      it->second += value;
      if (is_zero(it->second)) entries_.erase(it);
    }
  }

  bool is_zero_tensor() const { return entries_.empty(); }

  // Nonzero entries, keyed by sorted multi-index, in deterministic order.
  const std::map<MultiIndex, S>& entries() const { return entries_; }

  SymmetricTensor negated() const {
    SymmetricTensor t(dim_, order_);
    for (const auto& [k, v] : entries_) t.entries_[k] = -v;
    return t;
  }

  SymmetricTensor scaled(const S& c) const {
    SymmetricTensor t(dim_, order_);
    if (is_zero(c)) return t;
    for (const auto& [k, v] : entries_) {
      S w = v * c;
      if (!is_zero(w)) t.entries_[k] = std::move(w);
    }
    return t;
  }

  SymmetricTensor& operator+=(const SymmetricTensor& o) {
    if (o.dim_ != dim_ || o.order_ != order_)
      throw std::invalid_argument("tensor shape mismatch in +=");
    for (const auto& [k, v] : o.entries_) add(k, v);
    return *this;
  }

  friend bool operator==(const SymmetricTensor& a, const SymmetricTensor& b) {
    return a.dim_ == b.dim_ && a.order_ == b.order_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const SymmetricTensor& a, const SymmetricTensor& b) {
    return !(a == b);
  }

  // Contract the first k slots with the given vectors; returns the residual
  // symmetric (order-k)-form. Symmetry makes the slot choice immaterial.
  SymmetricTensor contract(const std::vector<std::vector<S>>& vectors) const {
    int k = static_cast<int>(vectors.size());
    if (k > order_)
      throw std::invalid_argument("more vectors than tensor slots");
    for (const auto& v : vectors)
      if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("contraction vector dimension mismatch");
    SymmetricTensor out(dim_, order_ - k);
    // Iterate over all assignments of the k contracted slots.
    std::vector<int> c(k, 0);
    auto residuals = all_sorted_indices(dim_, order_ - k);
    while (true) {
      S weight{1};
      bool zero = false;
      for (int t = 0; t < k; ++t) {
        weight *= vectors[t][c[t]];
        if (is_zero(weight)) {
          zero = true;
          break;
        }
      }
      if (!zero || k == 0) {
        for (const auto& beta : residuals) {
          MultiIndex full = beta;
          full.insert(full.end(), c.begin(), c.end());
          const S& e = get(full);
          if (!is_zero(e)) out.add(beta, e * weight);
        }
      }
      if (k == 0) break;
      int p = k - 1;
      while (p >= 0 && c[p] == dim_ - 1) c[p--] = 0;
      if (p < 0) break;
      ++c[p];
    }
    return out;
  }

  // Full contraction with exactly `order` vectors.
  S contract_full(const std::vector<std::vector<S>>& vectors) const {
    if (static_cast<int>(vectors.size()) != order_)
      throw std::invalid_argument("contract_full needs order-many vectors");
    SymmetricTensor scalar = contract(vectors);
    return scalar.get({});
  }

 private:
  void check_index(const MultiIndex& idx) const {
    if (static_cast<int>(idx.size()) != order_)
      throw std::invalid_argument("multi-index length != tensor order");
    for (int i : idx)
      if (i < 0 || i >= dim_)
        throw std::invalid_argument("multi-index entry out of range");
  }

  int dim_;
  int order_;
  std::map<MultiIndex, S> entries_;
};

}  // namespace pathint
