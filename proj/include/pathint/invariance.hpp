#pragma once

// The main theorem, checked two ways.
//
// check_invariance: compare diagram_sum(f) with diagram_sum(f o g^{-1})
// exactly through kappa^max_order, next to an exact volume-preservation
// verdict for g. The theorem says: equal iff det(Dg) jet == 1.
//
// first_variation: the infinitesimal version. Everything is lifted to dual
// numbers (eps^2 = 0), the flow id + eps*e is inverted exactly as
// id - eps*e + O(eps^2)-free jet algebra, and the eps-part of the pushed
// diagram series is extracted. The real part must reproduce the base series
// coefficient by coefficient; that is asserted, not assumed.
//
// trace_terms: the same eps-derivative assembled independently, diagram by
// diagram: for each vacuum class, removing one self-loop at a vertex of
// valence n and replacing the vertex weight -f^(n) by +W^(n-2), where
// W^(m) is the m-th derivative tensor of div(e). Each such surgery enters
// with weight 2*L_v / |Aut G| (either loop orientation, any of the L_v
// loops). The constant part of div(e) never appears: its disconnected
// contribution cancels against the eps-variation of the Hessian
// normalization, which is why divergence-free fields give zero and the
// series never sees an affine reparametrization.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathint/coord.hpp"
#include "pathint/feynman.hpp"

namespace pathint {

template <class S>
struct InvarianceReport {
  explicit InvarianceReport(int order)
      : base(order), pushed(order), max_order(order) {}

  FormalSeries<S> base;
  FormalSeries<S> pushed;
  int max_order;
  bool volume_preserving = false;
  bool equal = false;
  int first_differing_order = -1;  // -1 when equal through max_order
  S delta{0};                      // pushed - base at that order

  // The theorem predicts equality only FOR volume-preserving maps; a
  // non-volume-preserving map may still leave the series unchanged (for
  // example by a parity cancellation), which contradicts nothing.
  bool theorem_holds() const { return !volume_preserving || equal; }
};

template <class S>
InvarianceReport<S> check_invariance(const ActionJet<S>& action,
                                     const MapJet<S>& map, int max_order,
                                     EvalPolicy policy = EvalPolicy::kParallel) {
  InvarianceReport<S> report(max_order);
  report.volume_preserving = is_volume_preserving(map);
  ActionJet<S> pushed_action = pushforward_action(action, map);
  report.base = diagram_sum(action, max_order, false, policy);
  report.pushed = diagram_sum(pushed_action, max_order, false, policy);
  report.first_differing_order = first_difference(report.base, report.pushed);
  report.equal = report.first_differing_order < 0;
  if (!report.equal)
    report.delta = report.pushed.coefficient(report.first_differing_order) -
                   report.base.coefficient(report.first_differing_order);
  return report;
}

namespace detail {

inline ActionJet<Dual<Rational>> lift_action(const ActionJet<Rational>& a) {
  ActionJet<Dual<Rational>> out(
      a.dim(), a.order(), Dual<Rational>(a.value_at_critical(), Rational(0)));
  for (int n = 1; n <= a.order(); ++n)
    for (const auto& [idx, v] : a.coefficient(n).entries())
      out.coefficient(n).set(idx, Dual<Rational>(v, Rational(0)));
  return out;
}

// Remove one self-loop at the given vertex block and relabel half-edges
// densely, keeping blocks in order so vertex tensors stay aligned.
inline FeynmanDiagram remove_self_loop(const FeynmanDiagram& d, int vertex) {
  int loop_edge = -1;
  const auto& block = d.vertices[vertex];
  auto in_block = [&](int h) {
    return std::find(block.begin(), block.end(), h) != block.end();
  };
  for (std::size_t e = 0; e < d.edges.size(); ++e)
    if (in_block(d.edges[e][0]) && in_block(d.edges[e][1])) {
      loop_edge = static_cast<int>(e);
      break;
    }
  if (loop_edge < 0)
    throw std::invalid_argument("remove_self_loop: vertex has no self-loop");
  int h1 = d.edges[loop_edge][0];
  int h2 = d.edges[loop_edge][1];
  std::vector<int> new_id(d.half_edge_count, -1);
  int next = 0;
  for (int h = 0; h < d.half_edge_count; ++h)
    if (h != h1 && h != h2) new_id[h] = next++;
  FeynmanDiagram out;
  out.half_edge_count = next;
  for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v) {
    std::vector<int> nb;
    for (int h : d.vertices[v])
      if (new_id[h] >= 0) nb.push_back(new_id[h]);
    out.vertices.push_back(std::move(nb));
  }
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    if (e == loop_edge) continue;
    int a = new_id[d.edges[e][0]], b = new_id[d.edges[e][1]];
    out.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  return out;
}

// Derivative tensors of div(e) up to the given order (inclusive); the
// m-th tensor entry at exponent alpha is coeff(alpha) * prod(alpha_i!).
inline std::vector<SymmetricTensor<Rational>> divergence_tensors(
    const MapJet<Rational>& field, int up_to) {
  int d = field.dim();
  std::vector<SymmetricTensor<Rational>> w;
  w.reserve(up_to + 1);
  for (int m = 0; m <= up_to; ++m) w.emplace_back(d, m);
  const Polynomial<Rational> div = divergence_jet(field);
  for (const auto& [expo, c] : div.terms()) {
    int m = 0;
    for (int v : expo) m += v;
    if (m > up_to) continue;
    MultiIndex idx;
    Rational scale(1);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < expo[i]; ++k) idx.push_back(i);
      scale *= Rational::factorial(expo[i]);
    }
    w[m].add(idx, c * scale);
  }
  return w;
}

}  // namespace detail

// eps-part of diagram_sum(f o (id + eps e)^{-1}) over dual numbers.
inline FormalSeries<Rational> first_variation(
    const ActionJet<Rational>& action, const MapJet<Rational>& field,
    int max_order, EvalPolicy policy = EvalPolicy::kParallel) {
  if (action.dim() != field.dim())
    throw std::invalid_argument("first_variation: dimension mismatch");
  using DS = Dual<Rational>;
  int d = action.dim();
  ActionJet<DS> lifted = detail::lift_action(action);
  MapJet<DS> flow = MapJet<DS>::identity(d, action.order());
  int field_orders = std::min(field.order(), action.order());
  for (int a = 0; a < d; ++a)
    for (int n = 1; n <= field_orders; ++n)
      for (const auto& [idx, v] : field.coefficient(a, n).entries())
        flow.coefficient(a, n).add(idx, DS(Rational(0), v));
  ActionJet<DS> pushed = pushforward_action(lifted, flow);
  FormalSeries<DS> dual_series = diagram_sum(pushed, max_order, false, policy);
  FormalSeries<Rational> base = diagram_sum(action, max_order, false, policy);
  FormalSeries<Rational> out(max_order);
  for (int k = 0; k <= max_order; ++k) {
    if (dual_series.coefficient(k).re != base.coefficient(k))
      throw std::logic_error(
          "first_variation: dual real part diverged from the base series at "
          "order " +
          std::to_string(k));
    out.set_coefficient(k, dual_series.coefficient(k).ep);
  }
  return out;
}

// The same derivative assembled by loop surgery (see header comment).
inline FormalSeries<Rational> trace_terms(const ActionJet<Rational>& action,
                                          const MapJet<Rational>& field,
                                          int max_order) {
  if (action.dim() != field.dim())
    throw std::invalid_argument("trace_terms: dimension mismatch");
  int needed = 2 * max_order + 2;
  if (action.order() < needed)
    throw TruncationExceeded(
        "trace_terms at order " + std::to_string(max_order) +
        " needs action jets to order " + std::to_string(needed) + "; only " +
        std::to_string(action.order()) + " available");
  Matrix<Rational> propagator = hessian_inverse(action);
  std::vector<SymmetricTensor<Rational>> w =
      detail::divergence_tensors(field, 2 * max_order);
  FormalSeries<Rational> out(max_order);
  for (const DiagramClass& cls : enumerate_diagrams(max_order, 3, false)) {
    const FeynmanDiagram& g = cls.canonical;
    if (g.half_edge_count == 0) continue;
    int nv = static_cast<int>(g.vertices.size());
    // loops per vertex
    std::vector<int> vertex_of(g.half_edge_count);
    for (int v = 0; v < nv; ++v)
      for (int h : g.vertices[v]) vertex_of[h] = v;
    std::vector<int> loops(nv, 0);
    for (const auto& e : g.edges)
      if (vertex_of[e[0]] == vertex_of[e[1]]) ++loops[vertex_of[e[0]]];
    for (int v = 0; v < nv; ++v) {
      if (loops[v] == 0) continue;
      int m = static_cast<int>(g.vertices[v].size()) - 2;
      if (m >= static_cast<int>(w.size()) || w[m].is_zero_tensor()) continue;
      FeynmanDiagram cut = detail::remove_self_loop(g, v);
      std::vector<SymmetricTensor<Rational>> tensors;
      tensors.reserve(nv);
      for (int u = 0; u < nv; ++u)
        tensors.push_back(u == v ? w[m]
                                 : vertex_weight(action,
                                                 static_cast<int>(
                                                     g.vertices[u].size())));
      Rational value =
          evaluate_with_vertex_tensors(cut, tensors, propagator);
      out.add_coefficient(cls.order,
                          Rational(2 * loops[v]) * value /
                              Rational(static_cast<long>(cls.aut_count)));
    }
  }
  return out;
}

}  // namespace pathint
