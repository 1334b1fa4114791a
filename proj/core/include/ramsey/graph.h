#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace ramsey {

// Digit values are part of every key and file format. Do not reorder.
enum class Color : uint8_t { kUncolored = 0, kRed = 1, kGreen = 2 };

enum class Player : uint8_t { kRed = 0, kGreen = 1 };

inline Color color_of(Player p) {
  return p == Player::kRed ? Color::kRed : Color::kGreen;
}
inline Player opponent(Player p) {
  return p == Player::kRed ? Player::kGreen : Player::kRed;
}
const char* player_name(Player p);

struct Edge {
  int u = 0;
  int v = 0;
  friend bool operator==(const Edge& a, const Edge& b) {
    return a.u == b.u && a.v == b.v;
  }
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

// Simple undirected graph. Edges are stored with u < v in lexicographic
// order; the position of an edge in that order is its index everywhere.
class Graph {
 public:
  Graph() = default;
  Graph(int vertex_count, std::vector<Edge> edges);

  static Graph complete(int n);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[index]; }
  bool is_complete() const { return complete_; }

  // -1 when {u,v} is not an edge.
  int edge_index(int u, int v) const;
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  bool complete_ = false;
  std::vector<Edge> edges_;
  std::vector<int> index_;
  std::vector<std::vector<int>> adj_;
};

using BoardGraph = Graph;
using TargetGraph = Graph;

// Target graphs used throughout.
Graph clique_graph(int k);
// Two triangles sharing one vertex: a0a1a2 and a2a3a4.
Graph bow_tie_graph();
// K4 hub a0..a3 plus m legs; leg i is b_i0 joined to a0 and a1, and the
// triangle b_i0 b_i1 b_i2.
Graph topus_graph(int m);

// k when g is K_k (every vertex used, all pairs present), else 0.
int clique_order(const Graph& g);

// Partial red/green coloring of a board's edges.
class ColoredPosition {
 public:
  ColoredPosition() = default;
  explicit ColoredPosition(std::shared_ptr<const Graph> board);

  const Graph& board() const { return *board_; }
  const std::shared_ptr<const Graph>& board_ptr() const { return board_; }
  int vertex_count() const { return board_->vertex_count(); }
  int edge_count() const { return board_->edge_count(); }

  Color color(int edge) const { return static_cast<Color>(colors_[edge]); }
  Color color(int u, int v) const;
  void set_color(int edge, Color c);

  int count(Color c) const;
  int red_count() const { return red_; }
  int green_count() const { return green_; }
  int uncolored_count() const { return edge_count() - red_ - green_; }
  bool is_full() const { return uncolored_count() == 0; }

  const std::vector<uint8_t>& digits() const { return colors_; }

  friend bool operator==(const ColoredPosition& a, const ColoredPosition& b) {
    return *a.board_ == *b.board_ && a.colors_ == b.colors_;
  }

 private:
  std::shared_ptr<const Graph> board_;
  std::vector<uint8_t> colors_;
  int red_ = 0;
  int green_ = 0;
};

std::shared_ptr<const Graph> make_board(Graph g);
std::shared_ptr<const Graph> complete_board(int n);

// Codes are sum colors[i] * 3^i over edge indices.
mpz_class encode_position(const ColoredPosition& p);
ColoredPosition decode_position(const mpz_class& code,
                                std::shared_ptr<const Graph> board);

// Fast paths for boards with at most 40 edges (3^40 < 2^64).
constexpr int kMaxEdges64 = 40;
uint64_t encode_position64(const ColoredPosition& p);
ColoredPosition decode_position64(uint64_t code,
                                  std::shared_ptr<const Graph> board);
uint64_t pow3(int e);

// Text form: n=<int>;edges=<i-j:c,...> with c in {u,r,g}. For complete
// boards only colored edges are written. Other boards list every edge and
// carry a trailing ";board=explicit".
std::string format_position(const ColoredPosition& p);
ColoredPosition parse_position(std::string_view text);

// Relabels vertices: vertex v becomes perm[v].
ColoredPosition permute_position(const ColoredPosition& p,
                                 const std::vector<int>& perm);
ColoredPosition swap_colors(const ColoredPosition& p);

}  // namespace ramsey
