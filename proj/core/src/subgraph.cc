#include "ramsey/subgraph.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ramsey/canonical.h"

namespace ramsey {

namespace {

struct Host {
  int n = 0;
  int words = 0;
  std::vector<uint64_t> bits;
  std::vector<std::vector<int>> adj;

  explicit Host(int vertices) : n(vertices), words((vertices + 63) / 64),
                                bits(static_cast<size_t>(vertices) * words, 0), adj(vertices) {}

  void add(int x, int y) {
    bits[x * words + y / 64] |= uint64_t{1} << (y % 64);
    bits[y * words + x / 64] |= uint64_t{1} << (x % 64);
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  bool has(int x, int y) const { return bits[x * words + y / 64] >> (y % 64) & 1; }
  const uint64_t* row(int x) const { return &bits[x * words]; }
};

Host color_host(const ColoredPosition& p, Color c) {
  Host h(p.vertex_count());
  const Graph& g = p.board();
  for (int e = 0; e < g.edge_count(); ++e)
    if (p.color(e) == c) h.add(g.edge(e).u, g.edge(e).v);
  return h;
}

// Clique of size k inside the candidate set (bit words).
bool has_clique(const Host& h, std::vector<uint64_t>& cand, int k) {
  if (k <= 0) return true;
  for (int w = 0; w < h.words; ++w) {
    while (cand[w]) {
      int bit = __builtin_ctzll(cand[w]);
      cand[w] &= cand[w] - 1;
      int v = w * 64 + bit;
      if (k == 1) return true;
      std::vector<uint64_t> next(h.words);
      bool any = false;
      const uint64_t* r = h.row(v);
      for (int x = 0; x < h.words; ++x) {
        next[x] = cand[x] & r[x];
        any |= next[x] != 0;
      }
      if (any && has_clique(h, next, k - 1)) return true;
    }
  }
  return false;
}

class Matcher {
 public:
  Matcher(const Graph& pattern, const Host& host) : pat_(pattern), host_(host) {}

  // Visits every labeled embedding extending the fixed pairs. fn returns
  // false to stop; the return value reports whether the search was stopped.
  template <typename Fn>
  bool run(const std::vector<std::pair<int, int>>& fixed, Fn&& fn) {
    const int pn = pat_.vertex_count();
    map_.assign(pn, -1);
    used_.assign(host_.n, false);
    for (auto [a, x] : fixed) {
      if (used_[x] && map_[a] != x) return false;
      map_[a] = x;
      used_[x] = true;
    }
    for (auto [a, x] : fixed)
      for (auto [b, y] : fixed)
        if (a < b && pat_.has_edge(a, b) && !host_.has(x, y)) return false;
    build_order(fixed);
    return extend(0, fn);
  }

 private:
  void build_order(const std::vector<std::pair<int, int>>& fixed) {
    const int pn = pat_.vertex_count();
    std::vector<bool> placed(pn, false);
    for (auto [a, x] : fixed) placed[a] = true;
    order_.clear();
    while (true) {
      int best = -1, best_links = -1;
      for (int v = 0; v < pn; ++v) {
        if (placed[v]) continue;
        int links = 0;
        for (int w : pat_.neighbors(v)) links += placed[w];
        if (links > best_links || (links == best_links && pat_.degree(v) > pat_.degree(best))) {
          best = v;
          best_links = links;
        }
      }
      if (best < 0) break;
      placed[best] = true;
      order_.push_back(best);
    }
  }

  template <typename Fn>
  bool extend(size_t i, Fn&& fn) {
    if (i == order_.size()) return !fn(map_);
    int a = order_[i];
    int anchor = -1;
    for (int b : pat_.neighbors(a))
      if (map_[b] >= 0) {
        anchor = map_[b];
        break;
      }
    auto try_vertex = [&](int x) -> bool {
      if (used_[x] || static_cast<int>(host_.adj[x].size()) < pat_.degree(a)) return false;
      for (int b : pat_.neighbors(a))
        if (map_[b] >= 0 && !host_.has(x, map_[b])) return false;
      map_[a] = x;
      used_[x] = true;
      bool stop = extend(i + 1, fn);
      used_[x] = false;
      map_[a] = -1;
      return stop;
    };
    if (anchor >= 0) {
      for (int x : host_.adj[anchor])
        if (try_vertex(x)) return true;
    } else {
      for (int x = 0; x < host_.n; ++x)
        if (try_vertex(x)) return true;
    }
    return false;
  }

  const Graph& pat_;
  const Host& host_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::vector<int> order_;
};

bool contains_in_host(const Host& h, const Graph& a) {
  int k = clique_order(a);
  if (k > 0) {
    std::vector<uint64_t> all(h.words, 0);
    for (int v = 0; v < h.n; ++v) all[v / 64] |= uint64_t{1} << (v % 64);
    return has_clique(h, all, k);
  }
  Matcher m(a, h);
  return m.run({}, [](const std::vector<int>&) { return false; });
}

}  // namespace

bool contains_mono(const ColoredPosition& p, Color c, const Graph& a) {
  if (a.vertex_count() > p.vertex_count()) return false;
  Host h = color_host(p, c);
  return contains_in_host(h, a);
}

bool move_completes(const ColoredPosition& p, int edge, Color c, const Graph& a) {
  if (p.color(edge) != Color::kUncolored)
    throw std::invalid_argument("move_completes: edge already colored");
  if (a.vertex_count() > p.vertex_count()) return false;
  Host h = color_host(p, c);
  const Edge& e = p.board().edge(edge);
  h.add(e.u, e.v);
  int k = clique_order(a);
  if (k > 0) {
    std::vector<uint64_t> common(h.words);
    for (int w = 0; w < h.words; ++w) common[w] = h.row(e.u)[w] & h.row(e.v)[w];
    return has_clique(h, common, k - 2);
  }
  Matcher m(a, h);
  for (const Edge& pe : a.edges()) {
    if (m.run({{pe.u, e.u}, {pe.v, e.v}}, [](const std::vector<int>&) { return false; }))
      return true;
    if (m.run({{pe.u, e.v}, {pe.v, e.u}}, [](const std::vector<int>&) { return false; }))
      return true;
  }
  return false;
}

namespace {

bool arrows_rec(ColoredPosition& p, const std::vector<int>& free, size_t i, const Graph& a) {
  if (i == free.size()) return false;
  int e = free[i];
  for (Color c : {Color::kRed, Color::kGreen}) {
    if (move_completes(p, e, c, a)) continue;
    p.set_color(e, c);
    bool all = arrows_rec(p, free, i + 1, a);
    p.set_color(e, Color::kUncolored);
    if (!all) return false;
  }
  return true;
}

}  // namespace

bool arrows(const ColoredPosition& p, const Graph& a, const ArrowOptions& opt) {
  if (contains_mono(p, Color::kRed, a) || contains_mono(p, Color::kGreen, a)) return true;
  if (p.uncolored_count() > opt.max_uncolored)
    throw BudgetExceeded("arrows: too many uncolored edges");
  std::vector<int> free;
  for (int e = 0; e < p.edge_count(); ++e)
    if (p.color(e) == Color::kUncolored) free.push_back(e);
  ColoredPosition q = p;
  return arrows_rec(q, free, 0, a);
}

void for_each_copy(const Graph& host_graph, const std::vector<bool>& allowed, const Graph& pattern,
                   const std::function<bool(const std::vector<int>&)>& fn,
                   uint64_t max_embeddings) {
  Host h(host_graph.vertex_count());
  for (int e = 0; e < host_graph.edge_count(); ++e)
    if (allowed[e]) h.add(host_graph.edge(e).u, host_graph.edge(e).v);
  std::set<std::vector<int>> seen;
  uint64_t count = 0;
  std::vector<int> edges;
  Matcher m(pattern, h);
  m.run({}, [&](const std::vector<int>& map) {
    if (++count > max_embeddings) throw BudgetExceeded("too many embeddings");
    edges.clear();
    for (const Edge& pe : pattern.edges()) edges.push_back(host_graph.edge_index(map[pe.u], map[pe.v]));
    std::sort(edges.begin(), edges.end());
    if (!seen.insert(edges).second) return true;
    return fn(edges);
  });
}

}  // namespace ramsey
