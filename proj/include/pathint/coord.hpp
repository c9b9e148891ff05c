#pragma once

// Jet calculus for coordinate changes at the origin.
//
// Composition is Faa di Bruno over set partitions of the derivative slots:
//   (A o g)^(n)[i_1..i_n] = sum over partitions P of {1..n} of
//       A^(|P|) fully contracted with one vector per block b,
//       w_b[j] = g_j^(|b|)[slots of b].
// Inversion solves g o h = id order by order: the order-n condition is
// g^(1) h^(n) + R_n = 0 with R_n depending only on h^(<n), so
// h^(n) = -(g^(1))^{-1} R_n, and R_n is exactly the order-n composition
// computed while h^(n) still holds zeros.
//
// Jacobian-determinant and divergence jets are returned as polynomials in
// the base point, truncated at order N-1 (all a map jet of order N can say
// about them).

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pathint/jets.hpp"
#include "pathint/partitions.hpp"
#include "pathint/poly.hpp"

namespace pathint {

namespace detail {

// Order-n composed derivative tensor; `outer(m)` yields the outer order-m
// tensor. With the inner order-n tensors still zero this returns the
// inversion residual R_n.
template <class S, class OuterAt>
SymmetricTensor<S> fdb_order(int dim, OuterAt&& outer, const MapJet<S>& inner,
                             int n) {
  SymmetricTensor<S> out(dim, n);
  const PartitionSet& parts = enumerate_partitions(n);
  for (const MultiIndex& target : all_sorted_indices(dim, n)) {
    S entry{0};
    for (const SetPartition& part : parts.partitions) {
      int m = static_cast<int>(part.size());
      const SymmetricTensor<S>& om = outer(m);
      if (om.is_zero_tensor()) continue;
      std::vector<std::vector<S>> w;
      w.reserve(m);
      bool dead = false;
      for (const auto& block : part) {
        MultiIndex bidx;
        bidx.reserve(block.size());
        for (int pos : block) bidx.push_back(target[pos]);
        std::sort(bidx.begin(), bidx.end());
        std::vector<S> v(dim, S(0));
        bool any = false;
        for (int j = 0; j < dim; ++j) {
          v[j] = inner.coefficient(j, static_cast<int>(block.size())).get(bidx);
          if (!is_zero(v[j])) any = true;
        }
        if (!any) {
          dead = true;
          break;
        }
        w.push_back(std::move(v));
      }
      if (dead) continue;
      entry += om.contract_full(w);
    }
    out.set(target, std::move(entry));
  }
  return out;
}

}  // namespace detail

// A o g for a scalar jet A; truncation is the smaller of the two orders.
template <class S>
ActionJet<S> compose_jets(const ActionJet<S>& outer, const MapJet<S>& inner) {
  if (outer.dim() != inner.dim())
    throw std::invalid_argument("compose_jets: dimension mismatch");
  int n_max = std::min(outer.order(), inner.order());
  if (n_max < 2)
    throw TruncationExceeded(
        "composing an action with an order-1 map jet leaves no quadratic "
        "part");
  ActionJet<S> out(outer.dim(), n_max, outer.value_at_critical());
  for (int n = 1; n <= n_max; ++n)
    out.coefficient(n) = detail::fdb_order(
        outer.dim(),
        [&](int m) -> const SymmetricTensor<S>& { return outer.coefficient(m); },
        inner, n);
  return out;
}

// A o g componentwise for a map jet A.
template <class S>
MapJet<S> compose_jets(const MapJet<S>& outer, const MapJet<S>& inner) {
  if (outer.dim() != inner.dim())
    throw std::invalid_argument("compose_jets: dimension mismatch");
  int n_max = std::min(outer.order(), inner.order());
  MapJet<S> out(outer.dim(), n_max);
  for (int a = 0; a < outer.dim(); ++a)
    for (int n = 1; n <= n_max; ++n)
      out.coefficient(a, n) = detail::fdb_order(
          outer.dim(),
          [&](int m) -> const SymmetricTensor<S>& {
            return outer.coefficient(a, m);
          },
          inner, n);
  return out;
}

// Compositional inverse to the same truncation order. Requires an invertible
// linear part.
template <class S>
MapJet<S> invert_jet(const MapJet<S>& g) {
  int d = g.dim();
  int n_max = g.order();
  Matrix<S> h1;
  try {
    h1 = matrix_inverse(g.linear_part());
  } catch (const NotInvertible&) {
    throw NotInvertible("invert_jet: linear part is not invertible");
  }
  MapJet<S> h(d, n_max);
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < d; ++j)
      if (!is_zero(h1[a][j])) h.coefficient(a, 1).set({j}, h1[a][j]);
  for (int n = 2; n <= n_max; ++n) {
    std::vector<SymmetricTensor<S>> residual;
    residual.reserve(d);
    for (int a = 0; a < d; ++a)
      residual.push_back(detail::fdb_order(
          d,
          [&](int m) -> const SymmetricTensor<S>& {
            return g.coefficient(a, m);
          },
          h, n));
    for (int a = 0; a < d; ++a) {
      SymmetricTensor<S> t(d, n);
      for (int j = 0; j < d; ++j) {
        if (is_zero(h1[a][j])) continue;
        for (const auto& [idx, v] : residual[j].entries())
          t.add(idx, -(h1[a][j] * v));
      }
      h.coefficient(a, n) = std::move(t);
    }
  }
  return h;
}

// Pushforward g_*A = A o g^{-1}: the action seen in the new coordinates
// y = g(x).
template <class S>
ActionJet<S> pushforward_action(const ActionJet<S>& action,
                                const MapJet<S>& g) {
  if (!action.coefficient(1).is_zero_tensor())
    throw std::invalid_argument(
        "pushforward_action requires a critical-point jet (zero gradient)");
  return compose_jets(action, invert_jet(g));
}

// det(Dg) as a polynomial in the base point, truncated at order N-1.
template <class S>
Polynomial<S> jacobian_determinant_jet(const MapJet<S>& g) {
  int d = g.dim();
  int cap = g.order() - 1;
  std::vector<std::vector<Polynomial<S>>> jac(
      d, std::vector<Polynomial<S>>(d, Polynomial<S>(d)));
  for (int a = 0; a < d; ++a) {
    Polynomial<S> pa = polynomial_from_map_component(g, a);
    for (int j = 0; j < d; ++j) jac[a][j] = pa.derivative(j).truncate(cap);
  }
  Polynomial<S> det(d);
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Polynomial<S> prod = Polynomial<S>::constant(d, S(1));
    for (int i = 0; i < d && !prod.empty(); ++i)
      prod = prod.multiply(jac[i][perm[i]], cap);
    if (inversions % 2 == 0)
      det += prod;
    else
      det -= prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

template <class S>
bool is_volume_preserving(const MapJet<S>& g) {
  return jacobian_determinant_jet(g) ==
         Polynomial<S>::constant(g.dim(), S(1));
}

// div e as a polynomial in the base point, truncated at order N-1.
template <class S>
Polynomial<S> divergence_jet(const MapJet<S>& e) {
  int d = e.dim();
  int cap = e.order() - 1;
  Polynomial<S> div(d);
  for (int a = 0; a < d; ++a)
    div += polynomial_from_map_component(e, a).derivative(a).truncate(cap);
  return div;
}

// Moser slice F(s)^(n) = s^{n-1} g^(n), the jet of q -> g(s q)/s. It joins
// the identity (s=0) to g (s=1) through volume-preserving maps. Requires g
// to fix the origin with identity linear part and be volume-preserving.
template <class S>
MapJet<S> moser_homotopy(const MapJet<S>& g, const S& s) {
  if (!g.linear_part_is_identity())
    throw std::invalid_argument(
        "moser_homotopy requires identity linear part");
  if (!is_volume_preserving(g))
    throw std::invalid_argument(
        "moser_homotopy requires a volume-preserving map");
  MapJet<S> out(g.dim(), g.order());
  S power{1};  // s^{n-1}
  for (int n = 1; n <= g.order(); ++n) {
    for (int a = 0; a < g.dim(); ++a)
      out.coefficient(a, n) = g.coefficient(a, n).scaled(power);
    power *= s;
  }
  return out;
}

}  // namespace pathint
