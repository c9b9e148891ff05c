#pragma once

// Feynman rules and the diagram-sum assembly.
//
// For an action jet f at a critical point with nondegenerate Hessian:
//   propagator  P = (f^(2))^(-1)
//   vertex of valence n  ->  -f^(n)
//   ev(G) = sum over index assignments of prod(vertex tensors) * prod(P edges)
//   diagram_sum = sum over iso classes G of kappa^{order(G)} ev(G) / |Aut G|.
//
// ev is multiplicative over disjoint unions, so the sum is assembled from
// per-connected-component evaluations memoized by canonical code. Component
// evaluations are independent and can run on OpenMP threads; assembly order
// is canonical either way, and the result is identical exact arithmetic.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pathint/diagrams.hpp"
#include "pathint/jets.hpp"
#include "pathint/series.hpp"

namespace pathint {

enum class EvalPolicy { kSerial, kParallel };

// The n-th vertex tensor -f^(n)(0). Throws TruncationExceeded past the jet.
template <class S>
SymmetricTensor<S> vertex_weight(const ActionJet<S>& action, int n) {
  return action.coefficient(n).negated();
}

// ev(G) with an explicit tensor per vertex block (in block order) and an
// explicit propagator. Backtracks over half-edge index assignments edge by
// edge, multiplying in each vertex tensor as soon as its last half-edge is
// assigned and pruning on zero.
template <class S>
S evaluate_with_vertex_tensors(const FeynmanDiagram& d,
                               const std::vector<SymmetricTensor<S>>& tensors,
                               const Matrix<S>& propagator) {
  validate_diagram(d);
  int nv = static_cast<int>(d.vertices.size());
  if (static_cast<int>(tensors.size()) != nv)
    throw std::invalid_argument("one vertex tensor per vertex block required");
  int dim = static_cast<int>(propagator.size());
  for (int v = 0; v < nv; ++v) {
    if (tensors[v].order() != static_cast<int>(d.vertices[v].size()))
      throw std::invalid_argument("vertex tensor order != vertex valence");
    if (tensors[v].is_zero_tensor()) return S(0);
  }
  std::vector<int> vertex_of(d.half_edge_count, -1);
  for (int v = 0; v < nv; ++v)
    for (int h : d.vertices[v]) vertex_of[h] = v;

  std::vector<std::vector<int>> collected(nv);  // indices assigned so far
  for (int v = 0; v < nv; ++v) collected[v].reserve(d.vertices[v].size());
  S total{0};

  std::function<void(std::size_t, const S&)> step = [&](std::size_t ei,
                                                        const S& partial) {
    if (ei == d.edges.size()) {
      total += partial;
      return;
    }
    int va = vertex_of[d.edges[ei][0]];
    int vb = vertex_of[d.edges[ei][1]];
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        const S& p = propagator[i][j];
        if (is_zero(p)) continue;
        S next = partial * p;
        collected[va].push_back(i);
        collected[vb].push_back(j);
        bool dead = false;
        for (int v : {va, vb}) {
          if (collected[v].size() == d.vertices[v].size()) {
            const S& t = tensors[v].get(sorted_index(collected[v]));
            if (is_zero(t)) {
              dead = true;
              break;
            }
            next *= t;
          }
          if (va == vb) break;  // a loop completes its vertex only once
        }
        if (!dead) step(ei + 1, next);
        collected[vb].pop_back();
        collected[va].pop_back();
      }
    }
  };
  step(0, S(1));
  return total;
}

// ev(G) under the standard Feynman rules of an action jet.
template <class S>
S evaluate_diagram(const FeynmanDiagram& d, const ActionJet<S>& action) {
  validate_diagram(d);
  if (d.half_edge_count == 0) return S(1);
  std::vector<SymmetricTensor<S>> tensors;
  tensors.reserve(d.vertices.size());
  for (const auto& block : d.vertices)
    tensors.push_back(vertex_weight(action, static_cast<int>(block.size())));
  return evaluate_with_vertex_tensors(d, tensors, hessian_inverse(action));
}

// Full (or connected-only) diagram series through kappa^max_order.
// Needs action jets to order 2*max_order + 2: at order k a single vertex can
// carry k+1 self-loops, i.e. valence 2k+2.
template <class S>
FormalSeries<S> diagram_sum(const ActionJet<S>& action, int max_order,
                            bool connected_only = false,
                            EvalPolicy policy = EvalPolicy::kParallel) {
  int needed = 2 * max_order + 2;
  if (action.order() < needed)
    throw TruncationExceeded(
        "diagram_sum at order " + std::to_string(max_order) +
        " needs action jets to order " + std::to_string(needed) + "; only " +
        std::to_string(action.order()) + " available");
  Matrix<S> propagator = hessian_inverse(action);
  std::vector<DiagramClass> classes =
      enumerate_diagrams(max_order, 3, connected_only);

  // Gather the distinct connected components across all classes.
  std::map<std::vector<int>, FeynmanDiagram> components;
  std::vector<std::vector<std::vector<int>>> class_keys(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].canonical.half_edge_count == 0) continue;
    for (FeynmanDiagram& part : connected_components(classes[c].canonical)) {
      std::vector<int> key = canonical_code(part);
      class_keys[c].push_back(key);
      components.emplace(std::move(key), std::move(part));
    }
  }
  std::vector<const std::vector<int>*> keys;
  std::vector<const FeynmanDiagram*> parts;
  keys.reserve(components.size());
  parts.reserve(components.size());
  for (const auto& [key, part] : components) {
    keys.push_back(&key);
    parts.push_back(&part);
  }

  std::vector<S> values(parts.size());
  int n_parts = static_cast<int>(parts.size());
  bool parallel = policy == EvalPolicy::kParallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int t = 0; t < n_parts; ++t) {
    std::vector<SymmetricTensor<S>> tensors;
    tensors.reserve(parts[t]->vertices.size());
    for (const auto& block : parts[t]->vertices)
      tensors.push_back(
          vertex_weight(action, static_cast<int>(block.size())));
    values[t] = evaluate_with_vertex_tensors(*parts[t], tensors, propagator);
  }
  (void)parallel;

  std::map<std::vector<int>, const S*> memo;
  for (int t = 0; t < n_parts; ++t) memo[*keys[t]] = &values[t];

  FormalSeries<S> series(max_order);
  for (std::size_t c = 0; c < classes.size(); ++c) {
    S value{1};
    for (const auto& key : class_keys[c]) value *= *memo.at(key);
    series.add_coefficient(
        classes[c].order, value / S(static_cast<long>(classes[c].aut_count)));
  }
  return series;
}

// The non-series factor of the asymptotics at this critical point.
inline Prefactor prefactor(const ActionJet<Rational>& action) {
  Prefactor p;
  p.half_dim_power = Rational(action.dim(), 2);
  Rational det = hessian_determinant(action);
  if (det.is_zero()) throw DegenerateCriticalPoint("Hessian is singular");
  p.phase_eighths = hessian_signature(action);
  p.classical_value = action.value_at_critical();
  p.abs_det = det.abs();
  return p;
}

}  // namespace pathint
