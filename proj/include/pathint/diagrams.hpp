#pragma once

/// Feynman diagrams in the half-edge formulation: a finite set of half-edges
// {0..H-1} carrying two partitions — vertices (nonempty blocks) and edges
// (blocks of size exactly 2; a self-loop keeps both half-edges at one
// vertex). Isomorphism is a half-edge bijection inducing bijections of both
// partitions. Enumeration walks loop/multiplicity matrices per degree
// multiset with canonical-form deduplication; automorphisms are counted
// exactly as (adjacency-preserving vertex permutations) x (per-vertex loop
// swaps) x (parallel-edge swaps), which is the half-edge bijection count.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pathint {

struct FeynmanDiagram {
  int half_edge_count = 0;
  std::vector<std::vector<int>> vertices;  // each block sorted; blocks sorted
  std::vector<std::array<int, 2>> edges;   // each pair sorted; list sorted

  static FeynmanDiagram empty() { return {}; }
};

struct DiagramClass {
  FeynmanDiagram canonical;
  std::int64_t aut_count = 1;
  int euler = 0;  // |V| - |E|
  int order = 0;  // |E| - |V|; the kappa power of the class
};

// Throws std::invalid_argument when the two partitions do not both cover
// {0..H-1} exactly once or an edge block is not a pair.
void validate_diagram(const FeynmanDiagram& d);

// Stable text form, e.g. the triple edge on two trivalent vertices:
// V:[[0,1,2],[3,4,5]] E:[[0,3],[1,4],[2,5]]
std::string encode_diagram(const FeynmanDiagram& d);
FeynmanDiagram parse_diagram(const std::string& text);

bool is_isomorphic(const FeynmanDiagram& a, const FeynmanDiagram& b);

std::int64_t automorphism_count(const FeynmanDiagram& d);

int euler_characteristic(const FeynmanDiagram& d);

std::vector<FeynmanDiagram> connected_components(const FeynmanDiagram& d);

// One representative per isomorphism class with every vertex valence >=
// min_valence (>= 3 required; lower valences would make each order
// infinite) and order |E|-|V| <= max_order. Includes the empty diagram
// (order 0) unless connected_only. Deterministic order: (order, |V|,
// degree multiset, canonical form).
std::vector<DiagramClass> enumerate_diagrams(int max_order,
                                             int min_valence = 3,
                                             bool connected_only = false);

// Complete isomorphism invariant (and tie-break key) used by enumeration,
// memoization, and is_isomorphic: the lexicographically minimal
// (degrees, loops, upper-triangular multiplicities) encoding over
// degree-preserving vertex orderings.
std::vector<int> canonical_code(const FeynmanDiagram& d);

}  // namespace pathint
