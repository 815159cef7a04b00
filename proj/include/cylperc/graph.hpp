#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace cylperc {

/// Finite simple graph given by an explicit edge list over vertices 0..n-1.
/// Layered percolation runs on G x Z; one layer contributes n vertical
/// bonds (one per vertex) plus one horizontal bond per edge of G.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  static Graph cycle(int k) {
    if (k < 3) throw std::invalid_argument("cycle graph needs k >= 3");
    Graph g;
    g.n = k;
    for (int i = 0; i < k; ++i) g.edges.emplace_back(i, (i + 1) % k);
    return g;
  }

  static Graph line(int k) {
    if (k < 2) throw std::invalid_argument("line graph needs k >= 2");
    Graph g;
    g.n = k;
    for (int i = 0; i + 1 < k; ++i) g.edges.emplace_back(i, i + 1);
    return g;
  }

  bool is_cycle() const {
    if (static_cast<int>(edges.size()) != n || n < 3) return false;
    for (int i = 0; i < n; ++i)
      if (edges[i] != std::make_pair(i, (i + 1) % n)) return false;
    return true;
  }

  /// Bonds per layer: n vertical + one per edge.
  int layer_bonds() const { return n + static_cast<int>(edges.size()); }
};

/// Union-find with path compression, sized for one- or two-layer sweeps.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[a < b ? b : a] = (a < b ? a : b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace cylperc
