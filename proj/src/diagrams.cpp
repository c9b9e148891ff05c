#include "pathint/diagrams.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pathint {

namespace {

struct Multigraph {
  std::vector<int> degree;            // ascending is NOT assumed here
  std::vector<int> loops;             // self-loop count per vertex
  std::vector<std::vector<int>> adj;  // symmetric multiplicity matrix

  int n() const { return static_cast<int>(degree.size()); }
};

Multigraph to_multigraph(const FeynmanDiagram& d) {
  Multigraph g;
  int n = static_cast<int>(d.vertices.size());
  g.degree.assign(n, 0);
  g.loops.assign(n, 0);
  g.adj.assign(n, std::vector<int>(n, 0));
  std::vector<int> vertex_of(d.half_edge_count, -1);
  for (int v = 0; v < n; ++v) {
    g.degree[v] = static_cast<int>(d.vertices[v].size());
    for (int h : d.vertices[v]) vertex_of[h] = v;
  }
  for (const auto& e : d.edges) {
    int a = vertex_of[e[0]], b = vertex_of[e[1]];
    if (a == b) {
      ++g.loops[a];
    } else {
      ++g.adj[a][b];
      ++g.adj[b][a];
    }
  }
  return g;
}

// All vertex orderings that keep the degree sequence ascending: one sorted
// arrangement composed with arbitrary permutations inside each equal-degree
// group, enumerated with a per-group odometer. `visit` receives
// old-index-of-new-position.
template <class F>
void for_each_degree_sorted_perm(const std::vector<int>& degree, F visit) {
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < static_cast<int>(degree.size()); ++i)
    groups[degree[i]].push_back(i);
  std::vector<std::vector<int>> cur;
  cur.reserve(groups.size());
  for (auto& [d, ids] : groups) cur.push_back(ids);
  while (true) {
    std::vector<int> perm;
    perm.reserve(degree.size());
    for (const auto& g : cur) perm.insert(perm.end(), g.begin(), g.end());
    visit(perm);
    int gi = static_cast<int>(cur.size()) - 1;
    while (gi >= 0 && !std::next_permutation(cur[gi].begin(), cur[gi].end()))
      --gi;  // wrapped group resets to sorted; carry to the next group
    if (gi < 0) break;
  }
}

std::vector<int> code_for_perm(const Multigraph& g,
                               const std::vector<int>& perm) {
  int n = g.n();
  std::vector<int> code;
  code.reserve(1 + n + n + n * (n - 1) / 2);
  code.push_back(n);
  for (int i = 0; i < n; ++i) code.push_back(g.degree[perm[i]]);
  for (int i = 0; i < n; ++i) code.push_back(g.loops[perm[i]]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) code.push_back(g.adj[perm[i]][perm[j]]);
  return code;
}

std::vector<int> canonical_code_mg(const Multigraph& g) {
  if (g.n() == 0) return {0};
  std::vector<int> best;
  for_each_degree_sorted_perm(g.degree, [&](const std::vector<int>& perm) {
    std::vector<int> code = code_for_perm(g, perm);
    if (best.empty() || code < best) best = std::move(code);
  });
  return best;
}

// |Aut| of the half-edge diagram over a multigraph: (vertex permutations
// preserving loops and adjacency) x prod_v 2^L_v L_v! x prod_{i<j} adj_ij!.
std::int64_t automorphism_count_mg(const Multigraph& g) {
  int n = g.n();
  std::vector<int> base;  // group-sorted arrangement, = first perm visited
  base.reserve(n);
  {
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[g.degree[i]].push_back(i);
    for (auto& [d, ids] : groups)
      base.insert(base.end(), ids.begin(), ids.end());
  }
  std::int64_t vertex_autos = 0;
  for_each_degree_sorted_perm(g.degree, [&](const std::vector<int>& perm) {
    std::vector<int> pi(n);
    for (int k = 0; k < n; ++k) pi[base[k]] = perm[k];
    for (int i = 0; i < n; ++i) {
      if (g.loops[pi[i]] != g.loops[i]) return;
      for (int j = i + 1; j < n; ++j)
        if (g.adj[pi[i]][pi[j]] != g.adj[i][j]) return;
    }
    ++vertex_autos;
  });
  std::int64_t count = vertex_autos;
  for (int v = 0; v < n; ++v) {
    for (int l = 1; l <= g.loops[v]; ++l) count *= 2 * l;  // 2^L * L!
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int m = 2; m <= g.adj[i][j]; ++m) count *= m;  // multiplicities!
  return count;
}

bool connected_mg(const Multigraph& g) {
  int n = g.n();
  if (n == 0) return false;  // the empty diagram has no component
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && g.adj[u][v] > 0) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

// Deterministic half-edge realization of a multigraph given in its
// canonical vertex order: each vertex's half-edges are consecutive; loops
// claim the first slots, then parallel groups to later vertices in order.
FeynmanDiagram diagram_from_mg(const Multigraph& g) {
  FeynmanDiagram d;
  int n = g.n();
  std::vector<int> offset(n + 1, 0);
  for (int v = 0; v < n; ++v) offset[v + 1] = offset[v] + g.degree[v];
  d.half_edge_count = offset[n];
  d.vertices.resize(n);
  std::vector<int> next = offset;  // next free half-edge id per vertex
  for (int v = 0; v < n; ++v) {
    d.vertices[v].resize(g.degree[v]);
    std::iota(d.vertices[v].begin(), d.vertices[v].end(), offset[v]);
    for (int l = 0; l < g.loops[v]; ++l) {
      int h1 = next[v]++;
      int h2 = next[v]++;
      d.edges.push_back({h1, h2});
    }
  }
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      for (int m = 0; m < g.adj[v][w]; ++m) {
        int h1 = next[v]++;
        int h2 = next[w]++;
        d.edges.push_back({h1, h2});
      }
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

Multigraph mg_from_code(const std::vector<int>& code) {
  Multigraph g;
  int n = code[0];
  g.degree.assign(code.begin() + 1, code.begin() + 1 + n);
  g.loops.assign(code.begin() + 1 + n, code.begin() + 1 + 2 * n);
  g.adj.assign(n, std::vector<int>(n, 0));
  int p = 1 + 2 * n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      g.adj[i][j] = g.adj[j][i] = code[p++];
    }
  return g;
}

// Ascending degree multisets with sum(d-2) = 2*order and d >= min_valence.
void degree_multisets(int remaining, int min_d, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int d = min_d; d - 2 <= remaining; ++d) {
    cur.push_back(d);
    degree_multisets(remaining - (d - 2), d, cur, out);
    cur.pop_back();
  }
}

// All (loops, adj) assignments for a fixed degree vector, deduplicated by
// canonical code.
void enumerate_graphs_for_degrees(const std::vector<int>& degree,
                                  std::map<std::vector<int>, Multigraph>& out) {
  int n = static_cast<int>(degree.size());
  Multigraph g;
  g.degree = degree;
  g.loops.assign(n, 0);
  g.adj.assign(n, std::vector<int>(n, 0));

  // fill vertex i given earlier rows fixed
  std::function<void(int)> fill_vertex = [&](int i) {
    if (i == n) {
      std::vector<int> code = canonical_code_mg(g);
      if (!out.count(code)) out.emplace(std::move(code), g);
      return;
    }
    int used = 0;
    for (int j = 0; j < i; ++j) used += g.adj[j][i];
    int rem = degree[i] - used;
    if (rem < 0) return;
    // choose multiplicities toward later vertices, remainder must be even
    std::function<void(int, int)> fill_row = [&](int j, int rem2) {
      if (j == n) {
        if (rem2 % 2 == 0) {
          g.loops[i] = rem2 / 2;
          fill_vertex(i + 1);
          g.loops[i] = 0;
        }
        return;
      }
      for (int m = 0; m <= rem2; ++m) {
        g.adj[i][j] = g.adj[j][i] = m;
        fill_row(j + 1, rem2 - m);
      }
      g.adj[i][j] = g.adj[j][i] = 0;
    };
    fill_row(i + 1, rem);
  };
  fill_vertex(0);
}

}  // namespace

void validate_diagram(const FeynmanDiagram& d) {
  std::vector<int> vcover(d.half_edge_count, 0), ecover(d.half_edge_count, 0);
  auto touch = [&](std::vector<int>& cover, int h) {
    if (h < 0 || h >= d.half_edge_count)
      throw std::invalid_argument("half-edge id out of range");
    ++cover[h];
  };
  for (const auto& block : d.vertices) {
    if (block.empty())
      throw std::invalid_argument("empty vertex block");
    for (int h : block) touch(vcover, h);
  }
  for (const auto& e : d.edges) {
    touch(ecover, e[0]);
    touch(ecover, e[1]);
    if (e[0] == e[1])
      throw std::invalid_argument("edge repeats a half-edge");
  }
  for (int h = 0; h < d.half_edge_count; ++h) {
    if (vcover[h] != 1)
      throw std::invalid_argument("vertex partition must cover each half-edge once");
    if (ecover[h] != 1)
      throw std::invalid_argument("edge partition must cover each half-edge once");
  }
}

std::string encode_diagram(const FeynmanDiagram& d) {
  std::ostringstream os;
  auto list = [&os](const auto& blocks) {
    os << '[';
    bool first_block = true;
    for (const auto& b : blocks) {
      if (!first_block) os << ',';
      first_block = false;
      os << '[';
      bool first = true;
      for (int h : b) {
        if (!first) os << ',';
        first = false;
        os << h;
      }
      os << ']';
    }
    os << ']';
  };
  os << "V:";
  list(d.vertices);
  os << " E:";
  list(d.edges);
  return os.str();
}

FeynmanDiagram parse_diagram(const std::string& text) {
  FeynmanDiagram d;
  std::size_t pos = 0;
  auto expect = [&](const std::string& tok) {
    if (text.compare(pos, tok.size(), tok) != 0)
      throw std::invalid_argument("diagram text: expected '" + tok +
                                  "' at position " + std::to_string(pos));
    pos += tok.size();
  };
  auto parse_blocks = [&]() {
    std::vector<std::vector<int>> blocks;
    expect("[");
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      return blocks;
    }
    while (true) {
      expect("[");
      std::vector<int> block;
      while (true) {
        std::size_t start = pos;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        if (start == pos)
          throw std::invalid_argument("diagram text: expected integer");
        block.push_back(std::stoi(text.substr(start, pos - start)));
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
      expect("]");
      blocks.push_back(std::move(block));
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect("]");
    return blocks;
  };
  expect("V:");
  d.vertices = parse_blocks();
  expect(" E:");
  auto eblocks = parse_blocks();
  if (pos != text.size())
    throw std::invalid_argument("diagram text: trailing characters");
  int max_h = -1;
  for (const auto& b : d.vertices)
    for (int h : b) max_h = std::max(max_h, h);
  for (auto& b : eblocks) {
    if (b.size() != 2)
      throw std::invalid_argument("diagram text: edge block must be a pair");
    for (int h : b) max_h = std::max(max_h, h);
    d.edges.push_back({std::min(b[0], b[1]), std::max(b[0], b[1])});
  }
  d.half_edge_count = max_h + 1;
  std::sort(d.edges.begin(), d.edges.end());
  validate_diagram(d);
  return d;
}

std::vector<int> canonical_code(const FeynmanDiagram& d) {
  validate_diagram(d);
  return canonical_code_mg(to_multigraph(d));
}

bool is_isomorphic(const FeynmanDiagram& a, const FeynmanDiagram& b) {
  if (a.half_edge_count != b.half_edge_count) return false;
  if (a.vertices.size() != b.vertices.size()) return false;
  if (a.edges.size() != b.edges.size()) return false;
  return canonical_code(a) == canonical_code(b);
}

std::int64_t automorphism_count(const FeynmanDiagram& d) {
  validate_diagram(d);
  if (d.half_edge_count == 0) return 1;
  return automorphism_count_mg(to_multigraph(d));
}

int euler_characteristic(const FeynmanDiagram& d) {
  return static_cast<int>(d.vertices.size()) -
         static_cast<int>(d.edges.size());
}

std::vector<FeynmanDiagram> connected_components(const FeynmanDiagram& d) {
  validate_diagram(d);
  int n = static_cast<int>(d.vertices.size());
  std::vector<int> vertex_of(d.half_edge_count, -1);
  for (int v = 0; v < n; ++v)
    for (int h : d.vertices[v]) vertex_of[h] = v;
  // union vertices along edges
  std::vector<int> comp(n, -1);
  Multigraph g = to_multigraph(d);
  int n_comp = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> stack{start};
    comp[start] = n_comp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v)
        if (comp[v] < 0 && g.adj[u][v] > 0) {
          comp[v] = n_comp;
          stack.push_back(v);
        }
    }
    ++n_comp;
  }
  // order components by smallest half-edge id; relabel half-edges densely in
  // ascending original order
  std::vector<FeynmanDiagram> out(n_comp);
  std::vector<int> new_id(d.half_edge_count, -1);
  std::vector<int> counter(n_comp, 0);
  std::vector<int> comp_order(n_comp, -1);
  {
    int next_comp = 0;
    for (int h = 0; h < d.half_edge_count; ++h) {
      int c = comp[vertex_of[h]];
      if (comp_order[c] < 0) comp_order[c] = next_comp++;
    }
  }
  for (int h = 0; h < d.half_edge_count; ++h) {
    int c = comp_order[comp[vertex_of[h]]];
    new_id[h] = counter[c]++;
  }
  for (int v = 0; v < n; ++v) {
    int c = comp_order[comp[v]];
    std::vector<int> block;
    for (int h : d.vertices[v]) block.push_back(new_id[h]);
    std::sort(block.begin(), block.end());
    out[c].vertices.push_back(std::move(block));
  }
  for (const auto& e : d.edges) {
    int c = comp_order[comp[vertex_of[e[0]]]];
    int h1 = new_id[e[0]], h2 = new_id[e[1]];
    out[c].edges.push_back({std::min(h1, h2), std::max(h1, h2)});
  }
  for (int c = 0; c < n_comp; ++c) {
    out[c].half_edge_count = counter[c];
    std::sort(out[c].vertices.begin(), out[c].vertices.end());
    std::sort(out[c].edges.begin(), out[c].edges.end());
    validate_diagram(out[c]);
  }
  return out;
}

std::vector<DiagramClass> enumerate_diagrams(int max_order, int min_valence,
                                             bool connected_only) {
  if (max_order < 0)
    throw std::invalid_argument("enumerate_diagrams: max_order must be >= 0");
  if (min_valence < 3)
    throw std::invalid_argument(
        "enumerate_diagrams: min_valence must be >= 3 (lower valences give "
        "infinitely many classes per order)");
  std::vector<DiagramClass> out;
  if (!connected_only) {
    DiagramClass empty;
    empty.canonical = FeynmanDiagram::empty();
    empty.aut_count = 1;
    empty.euler = 0;
    empty.order = 0;
    out.push_back(std::move(empty));
  }
  for (int order = 1; order <= max_order; ++order) {
    std::vector<std::vector<int>> multisets;
    std::vector<int> cur;
    degree_multisets(2 * order, min_valence, cur, multisets);
    // (|V|, degree multiset) ascending
    std::stable_sort(multisets.begin(), multisets.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                       if (a.size() != b.size()) return a.size() < b.size();
                       return a < b;
                     });
    for (const auto& degs : multisets) {
      std::map<std::vector<int>, Multigraph> reps;  // code -> graph
      enumerate_graphs_for_degrees(degs, reps);
      for (const auto& [code, graph] : reps) {
        if (connected_only && !connected_mg(graph)) continue;
        Multigraph canon = mg_from_code(code);
        DiagramClass cls;
        cls.canonical = diagram_from_mg(canon);
        cls.aut_count = automorphism_count_mg(canon);
        cls.euler = euler_characteristic(cls.canonical);
        cls.order = -cls.euler;
        out.push_back(std::move(cls));
      }
    }
  }
  return out;
}

}  // namespace pathint
