#pragma once

#include <cstdint>
#include <vector>

#include "ramsey/graph.h"

namespace ramsey {

// Dense vertex-pair matrix: 0 uncolored, 1 red, 2 green, 3 not a board edge.
struct ColorMatrix {
  static constexpr uint8_t kNoEdge = 3;

  int n = 0;
  std::vector<uint8_t> cell;

  explicit ColorMatrix(const ColoredPosition& p) : n(p.vertex_count()), cell(n * n, kNoEdge) {
    const Graph& g = p.board();
    for (int i = 0; i < n; ++i) cell[i * n + i] = 0;
    for (int e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      cell[ed.u * n + ed.v] = cell[ed.v * n + ed.u] = p.digits()[e];
    }
  }

  uint8_t at(int u, int v) const { return cell[u * n + v]; }

  void swap_red_green() {
    for (auto& c : cell) {
      if (c == 1) c = 2;
      else if (c == 2) c = 1;
    }
  }

  bool twins(int u, int v) const {
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if (at(u, w) != at(v, w)) return false;
    }
    return true;
  }

  // rep[v] is the smallest vertex twin to v. Twins have identical rows
  // outside the pair, so exchanging them is an automorphism.
  std::vector<int> twin_representatives() const {
    std::vector<int> rep(n);
    for (int v = 0; v < n; ++v) {
      rep[v] = v;
      for (int u = 0; u < v; ++u) {
        if (rep[u] == u && twins(u, v)) {
          rep[v] = u;
          break;
        }
      }
    }
    return rep;
  }
};

}  // namespace ramsey
