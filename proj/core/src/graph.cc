#include "ramsey/graph.h"

#include <algorithm>
#include <stdexcept>

namespace ramsey {

const char* player_name(Player p) {
  return p == Player::kRed ? "red" : "green";
}

Graph::Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
  if (n_ < 0) throw std::invalid_argument("negative vertex count");
  for (auto& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self loop");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  edges_ = std::move(edges);
  index_.assign(static_cast<size_t>(n_) * n_, -1);
  adj_.assign(n_, {});
  for (int i = 0; i < edge_count(); ++i) {
    const Edge& e = edges_[i];
    index_[e.u * n_ + e.v] = index_[e.v * n_ + e.u] = i;
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  complete_ = static_cast<long>(edges_.size()) == static_cast<long>(n_) * (n_ - 1) / 2;
}

Graph Graph::complete(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return Graph(n, std::move(edges));
}

int Graph::edge_index(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  return index_[u * n_ + v];
}

Graph clique_graph(int k) {
  if (k < 2) throw std::invalid_argument("clique needs k >= 2");
  return Graph::complete(k);
}

Graph bow_tie_graph() {
  return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
}

Graph topus_graph(int m) {
  if (m < 1) throw std::invalid_argument("topus needs at least one leg");
  std::vector<Edge> e = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int i = 0; i < m; ++i) {
    int b0 = 4 + 3 * i, b1 = b0 + 1, b2 = b0 + 2;
    e.push_back({0, b0});
    e.push_back({1, b0});
    e.push_back({b0, b1});
    e.push_back({b0, b2});
    e.push_back({b1, b2});
  }
  return Graph(4 + 3 * m, std::move(e));
}

int clique_order(const Graph& g) {
  if (g.vertex_count() >= 2 && g.is_complete()) return g.vertex_count();
  return 0;
}

ColoredPosition::ColoredPosition(std::shared_ptr<const Graph> board)
    : board_(std::move(board)), colors_(board_->edge_count(), 0) {}

Color ColoredPosition::color(int u, int v) const {
  int e = board_->edge_index(u, v);
  return e < 0 ? Color::kUncolored : color(e);
}

void ColoredPosition::set_color(int edge, Color c) {
  Color old = color(edge);
  if (old == Color::kRed) --red_;
  if (old == Color::kGreen) --green_;
  if (c == Color::kRed) ++red_;
  if (c == Color::kGreen) ++green_;
  colors_[edge] = static_cast<uint8_t>(c);
}

int ColoredPosition::count(Color c) const {
  switch (c) {
    case Color::kRed: return red_;
    case Color::kGreen: return green_;
    default: return uncolored_count();
  }
}

std::shared_ptr<const Graph> make_board(Graph g) {
  return std::make_shared<const Graph>(std::move(g));
}

std::shared_ptr<const Graph> complete_board(int n) {
  return make_board(Graph::complete(n));
}

uint64_t pow3(int e) {
  uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

mpz_class encode_position(const ColoredPosition& p) {
  mpz_class code = 0;
  for (int i = p.edge_count() - 1; i >= 0; --i) {
    code *= 3;
    code += static_cast<unsigned>(p.digits()[i]);
  }
  return code;
}

ColoredPosition decode_position(const mpz_class& code,
                                std::shared_ptr<const Graph> board) {
  ColoredPosition p(std::move(board));
  mpz_class limit;
  mpz_ui_pow_ui(limit.get_mpz_t(), 3, p.edge_count());
  if (code < 0 || code >= limit) throw std::out_of_range("code out of range");
  mpz_class c = code;
  for (int i = 0; i < p.edge_count(); ++i) {
    mpz_class d;
    mpz_fdiv_qr_ui(c.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t(), 3);
    p.set_color(i, static_cast<Color>(d.get_ui()));
  }
  return p;
}

uint64_t encode_position64(const ColoredPosition& p) {
  if (p.edge_count() > kMaxEdges64)
    throw std::length_error("board too large for 64-bit codes");
  uint64_t code = 0;
  for (int i = p.edge_count() - 1; i >= 0; --i) code = code * 3 + p.digits()[i];
  return code;
}

ColoredPosition decode_position64(uint64_t code,
                                  std::shared_ptr<const Graph> board) {
  ColoredPosition p(std::move(board));
  if (p.edge_count() > kMaxEdges64)
    throw std::length_error("board too large for 64-bit codes");
  if (p.edge_count() < kMaxEdges64 && code >= pow3(p.edge_count()))
    throw std::out_of_range("code out of range");
  for (int i = 0; i < p.edge_count(); ++i) {
    p.set_color(i, static_cast<Color>(code % 3));
    code /= 3;
  }
  return p;
}

namespace {

char color_char(Color c) {
  switch (c) {
    case Color::kRed: return 'r';
    case Color::kGreen: return 'g';
    default: return 'u';
  }
}

Color parse_color_char(char c) {
  switch (c) {
    case 'u': return Color::kUncolored;
    case 'r': return Color::kRed;
    case 'g': return Color::kGreen;
  }
  throw std::invalid_argument(std::string("bad color '") + c + "'");
}

int parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("expected integer");
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("expected integer");
    v = v * 10 + (c - '0');
    if (v > 1000000) throw std::invalid_argument("integer too large");
  }
  return v;
}

}  // namespace

std::string format_position(const ColoredPosition& p) {
  std::string out = "n=" + std::to_string(p.vertex_count()) + ";edges=";
  bool explicit_board = !p.board().is_complete();
  bool first = true;
  for (int i = 0; i < p.edge_count(); ++i) {
    if (!explicit_board && p.color(i) == Color::kUncolored) continue;
    if (!first) out += ',';
    first = false;
    const Edge& e = p.board().edge(i);
    out += std::to_string(e.u) + '-' + std::to_string(e.v) + ':' + color_char(p.color(i));
  }
  if (explicit_board) out += ";board=explicit";
  return out;
}

ColoredPosition parse_position(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  int n = -1;
  bool explicit_board = false;
  std::string_view edge_list;
  bool saw_edges = false;
  while (!text.empty()) {
    size_t semi = text.find(';');
    std::string_view field = text.substr(0, semi);
    text = semi == std::string_view::npos ? std::string_view() : text.substr(semi + 1);
    size_t eq = field.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("malformed field");
    std::string_view key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "n") {
      n = parse_int(value);
    } else if (key == "edges") {
      edge_list = value;
      saw_edges = true;
    } else if (key == "board") {
      if (value != "explicit" && value != "complete")
        throw std::invalid_argument("unknown board kind");
      explicit_board = value == "explicit";
    } else {
      throw std::invalid_argument("unknown field");
    }
  }
  if (n < 1 || !saw_edges) throw std::invalid_argument("position needs n and edges");
  std::vector<std::pair<Edge, Color>> items;
  while (!edge_list.empty()) {
    size_t comma = edge_list.find(',');
    std::string_view item = edge_list.substr(0, comma);
    edge_list = comma == std::string_view::npos ? std::string_view() : edge_list.substr(comma + 1);
    size_t dash = item.find('-'), colon = item.find(':');
    if (dash == std::string_view::npos || colon == std::string_view::npos || colon < dash ||
        colon + 2 != item.size())
      throw std::invalid_argument("malformed edge item");
    Edge e{parse_int(item.substr(0, dash)), parse_int(item.substr(dash + 1, colon - dash - 1))};
    items.push_back({e, parse_color_char(item[colon + 1])});
  }
  std::shared_ptr<const Graph> board;
  if (explicit_board) {
    std::vector<Edge> edges;
    for (auto& [e, c] : items) edges.push_back(e);
    board = make_board(Graph(n, edges));
  } else {
    board = complete_board(n);
  }
  ColoredPosition p(board);
  std::vector<bool> seen(p.edge_count(), false);
  for (auto& [e, c] : items) {
    int idx = board->edge_index(e.u, e.v);
    if (idx < 0) throw std::invalid_argument("edge not on board");
    if (seen[idx]) throw std::invalid_argument("edge listed twice");
    seen[idx] = true;
    p.set_color(idx, c);
  }
  return p;
}

ColoredPosition permute_position(const ColoredPosition& p,
                                 const std::vector<int>& perm) {
  const Graph& g = p.board();
  if (static_cast<int>(perm.size()) != g.vertex_count())
    throw std::invalid_argument("permutation size mismatch");
  ColoredPosition out(p.board_ptr());
  for (int i = 0; i < g.edge_count(); ++i) {
    if (p.color(i) == Color::kUncolored) continue;
    int j = g.edge_index(perm[g.edge(i).u], perm[g.edge(i).v]);
    if (j < 0) throw std::invalid_argument("permutation does not preserve the board");
    out.set_color(j, p.color(i));
  }
  return out;
}

ColoredPosition swap_colors(const ColoredPosition& p) {
  ColoredPosition out(p.board_ptr());
  for (int i = 0; i < p.edge_count(); ++i) {
    Color c = p.color(i);
    if (c == Color::kRed) out.set_color(i, Color::kGreen);
    if (c == Color::kGreen) out.set_color(i, Color::kRed);
  }
  return out;
}

}  // namespace ramsey
