#include "ramsey/reductions.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ramsey {

const char* reduction_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::kAvoid: return "avoid";
    case ReductionKind::kAchieveWeak: return "achieve-weak";
    case ReductionKind::kAchieve: return "achieve";
  }
  return "unknown";
}

ReductionKind parse_reduction_kind(std::string_view name) {
  if (name == "avoid") return ReductionKind::kAvoid;
  if (name == "achieve-weak") return ReductionKind::kAchieveWeak;
  if (name == "achieve") return ReductionKind::kAchieve;
  throw std::invalid_argument("unknown reduction kind '" + std::string(name) + "'");
}

int ReductionOutput::vertex_id(const std::string& name) const {
  auto it = vertex.find(name);
  if (it == vertex.end()) throw std::out_of_range("no vertex " + name);
  return it->second;
}

int ReductionOutput::edge_id(const std::string& name) const {
  auto it = edge.find(name);
  if (it == edge.end()) throw std::out_of_range("no edge " + name);
  return it->second;
}

namespace {

std::string nm(const std::string& base, int a) { return base + std::to_string(a); }
std::string nm(const std::string& base, int a, int b) {
  return base + std::to_string(a) + "," + std::to_string(b);
}

class Builder {
 public:
  int vertex(const std::string& name) {
    if (ids_.count(name)) throw std::logic_error("duplicate vertex " + name);
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    ids_[name] = id;
    return id;
  }
  int at(const std::string& name) const { return ids_.at(name); }

  void edge(const std::string& a, const std::string& b) {
    colors_.emplace(key(a, b), Color::kUncolored);
  }
  // Triangle on three vertices.
  void tri(const std::string& a, const std::string& b, const std::string& c) {
    edge(a, b);
    edge(a, c);
    edge(b, c);
  }
  void paint(const std::string& a, const std::string& b, Color c) {
    auto it = colors_.find(key(a, b));
    if (it == colors_.end()) throw std::logic_error("precolored pair " + a + "-" + b + " not in E");
    if (it->second != Color::kUncolored && it->second != c)
      throw std::logic_error("edge " + a + "-" + b + " precolored twice");
    it->second = c;
  }
  void paint_tri(const std::string& a, const std::string& b, const std::string& c, Color col) {
    paint(a, b, col);
    paint(a, c, col);
    paint(b, c, col);
  }
  // The two edges joining a to both ends of the pair (bt, bb).
  void paint_v(const std::string& a, const std::string& bt, const std::string& bb, Color col) {
    paint(a, bt, col);
    paint(a, bb, col);
  }
  void name_edge(const std::string& edge_name, const std::string& a, const std::string& b) {
    named_.emplace_back(edge_name, key(a, b));
  }

  ReductionOutput finish(GameVariant variant, const Graph& target) const {
    std::vector<Edge> edges;
    for (const auto& [e, c] : colors_) edges.push_back(e);
    ReductionOutput out;
    out.spec.variant = variant;
    out.spec.board = make_board(Graph(static_cast<int>(names_.size()), edges));
    out.spec.target_red = target;
    out.spec.target_green = target;
    const Graph& g = *out.spec.board;
    for (const auto& [e, c] : colors_) {
      int idx = g.edge_index(e.u, e.v);
      if (c == Color::kRed) out.spec.precolor_red.push_back(idx);
      if (c == Color::kGreen) out.spec.precolor_green.push_back(idx);
    }
    std::sort(out.spec.precolor_red.begin(), out.spec.precolor_red.end());
    std::sort(out.spec.precolor_green.begin(), out.spec.precolor_green.end());
    out.vertex_names = names_;
    out.vertex = ids_;
    for (const auto& [edge_name, e] : named_) out.edge[edge_name] = g.edge_index(e.u, e.v);
    return out;
  }

 private:
  Edge key(const std::string& a, const std::string& b) const {
    int x = ids_.at(a), y = ids_.at(b);
    if (x == y) throw std::logic_error("loop at " + a);
    return x < y ? Edge{x, y} : Edge{y, x};
  }

  std::vector<std::string> names_;
  std::map<std::string, int> ids_;
  std::map<Edge, Color> colors_;
  std::vector<std::pair<std::string, Edge>> named_;
};

void check_uncolored(const ReductionOutput& out, size_t expected) {
  size_t colored = out.spec.precolor_red.size() + out.spec.precolor_green.size();
  if (out.spec.board->edge_count() - colored != expected || out.edge.size() != expected)
    throw std::logic_error("reduction produced an unexpected number of uncolored edges");
}

PositiveFormula prepared(const PositiveFormula& f, FormulaKind kind) {
  if (f.kind != kind) throw std::invalid_argument("reduction expects a different formula kind");
  PositiveFormula g = f;
  g.normalize();
  g.validate();
  return g;
}

}  // namespace

ReductionOutput reduce_cnf_to_avoid(const PositiveFormula& formula) {
  const PositiveFormula f = prepared(formula, FormulaKind::kCnf);
  const int n = f.variable_count;
  const int m = static_cast<int>(f.clauses.size());
  const Color R = Color::kRed, G = Color::kGreen;
  Builder b;
  auto t = [](const std::string& s) { return s + "t"; };
  auto bo = [](const std::string& s) { return s + "b"; };

  for (int k = 0; k < 3; ++k) b.vertex(nm("u0,", k));
  b.vertex("r0t");
  b.vertex("r0b");
  for (int j = 1; j <= m; ++j) {
    for (int k = 0; k < 3; ++k) b.vertex(nm("u", j, k));
    b.vertex(t(nm("d", j)));
    b.vertex(bo(nm("d", j)));
    for (int p = 1; p < j; ++p) b.vertex(nm("w", j, p));
    for (int k = 1; k <= static_cast<int>(f.clauses[j - 1].size()); ++k) b.vertex(nm("f", j, k));
  }
  for (int i = 1; i <= n; ++i) {
    for (int k = 0; k < 3; ++k) b.vertex(nm("v", i, k));
    b.vertex(t(nm("r", i)));
    b.vertex(bo(nm("r", i)));
    b.vertex(nm("v", i, 3));
    b.vertex(t(nm("y", i)));
    b.vertex(bo(nm("y", i)));
    b.vertex(nm("v", i, 4));
    b.vertex(t(nm("g", i)));
    b.vertex(bo(nm("g", i)));
    for (int k = 5; k <= 7; ++k) b.vertex(nm("v", i, k));
  }

  // E
  b.tri("u0,0", "u0,1", "u0,2");
  b.tri("u0,2", "r0t", "r0b");
  for (int j = 1; j <= m; ++j) {
    std::string d = nm("d", j);
    b.tri(nm("u", j, 0), nm("u", j, 1), nm("u", j, 2));
    b.tri(nm("u", j, 2), t(d), bo(d));
    for (int p = 1; p < j; ++p) {
      std::string w = nm("w", j, p), dp = nm("d", p);
      b.edge(w, t(dp));
      b.edge(w, bo(dp));
      b.edge(w, t(d));
      b.edge(w, bo(d));
    }
    const auto& clause = f.clauses[j - 1];
    for (int k = 1; k <= static_cast<int>(clause.size()); ++k) {
      std::string fk = nm("f", j, k), gh = nm("g", clause[k - 1]);
      b.edge(fk, t(d));
      b.edge(fk, bo(d));
      b.edge(fk, t(gh));
      b.edge(fk, bo(gh));
    }
  }
  for (int i = 1; i <= n; ++i) {
    std::string r = nm("r", i), y = nm("y", i), g = nm("g", i);
    auto v = [&](int k) { return nm("v", i, k); };
    b.tri(v(0), v(1), v(2));
    b.tri(v(2), t(r), bo(r));
    b.tri(v(3), t(r), bo(r));
    b.tri(v(3), t(y), bo(y));
    b.tri(v(4), t(y), bo(y));
    b.tri(v(4), t(g), bo(g));
    b.tri(v(5), t(g), bo(g));
    b.tri(v(5), v(6), v(7));
  }

  // Red precoloring
  for (int j = 1; j <= m; ++j) {
    std::string d = nm("d", j);
    b.paint_tri(nm("u", j, 0), nm("u", j, 1), nm("u", j, 2), R);
    b.paint_v(nm("u", j, 2), t(d), bo(d), R);
  }
  for (int i = 1; i <= n; ++i) {
    std::string r = nm("r", i), y = nm("y", i), g = nm("g", i);
    b.paint_v(nm("v", i, 3), t(r), bo(r), R);
    b.paint_v(nm("v", i, 3), t(y), bo(y), R);
    b.paint_v(nm("v", i, 5), t(g), bo(g), R);
    b.paint_tri(nm("v", i, 5), nm("v", i, 6), nm("v", i, 7), R);
  }

  // Green precoloring
  b.paint_tri("u0,0", "u0,1", "u0,2", G);
  b.paint_v("u0,2", "r0t", "r0b", G);
  for (int j = 1; j <= m; ++j) {
    std::string d = nm("d", j);
    for (int p = 1; p < j; ++p) {
      std::string w = nm("w", j, p), dp = nm("d", p);
      b.paint_v(w, t(dp), bo(dp), G);
      b.paint_v(w, t(d), bo(d), G);
    }
    const auto& clause = f.clauses[j - 1];
    for (int k = 1; k <= static_cast<int>(clause.size()); ++k) {
      std::string fk = nm("f", j, k), gh = nm("g", clause[k - 1]);
      b.paint_v(fk, t(d), bo(d), G);
      b.paint_v(fk, t(gh), bo(gh), G);
    }
  }
  for (int i = 1; i <= n; ++i) {
    std::string r = nm("r", i), y = nm("y", i), g = nm("g", i);
    b.paint_tri(nm("v", i, 0), nm("v", i, 1), nm("v", i, 2), G);
    b.paint_v(nm("v", i, 2), t(r), bo(r), G);
    b.paint_v(nm("v", i, 4), t(y), bo(y), G);
    b.paint_v(nm("v", i, 4), t(g), bo(g), G);
  }

  b.name_edge("r0", "r0t", "r0b");
  for (int j = 1; j <= m; ++j) b.name_edge(nm("d", j), t(nm("d", j)), bo(nm("d", j)));
  for (int i = 1; i <= n; ++i)
    for (const char* s : {"r", "y", "g"}) b.name_edge(nm(s, i), t(nm(s, i)), bo(nm(s, i)));

  ReductionOutput out = b.finish(GameVariant::kAvoid, bow_tie_graph());
  check_uncolored(out, static_cast<size_t>(3 * n + m + 1));
  return out;
}

namespace {

// Shared body of both DNF reductions. With full_legs, m becomes n and a
// green 3n-topus with uncolored feet is appended.
ReductionOutput dnf_reduction(const PositiveFormula& formula, bool full_legs, GameVariant variant) {
  const PositiveFormula f = prepared(formula, FormulaKind::kDnf);
  const int n = f.variable_count;
  const int q = static_cast<int>(f.clauses.size());
  int max_len = 0, min_len = n;
  for (const auto& c : f.clauses) {
    max_len = std::max(max_len, static_cast<int>(c.size()));
    min_len = std::min(min_len, static_cast<int>(c.size()));
  }
  const int m = full_legs ? n : max_len;
  const int p = m - min_len;
  const int h_legs = full_legs ? 3 * n : 0;
  const Color R = Color::kRed, G = Color::kGreen;
  Builder b;

  for (int k = 1; k <= p; ++k) {
    b.vertex(nm("r", k) + "t");
    b.vertex(nm("r", k) + "b");
  }
  for (int j = 1; j <= q; ++j) {
    for (int a = 0; a < 4; ++a) b.vertex(nm("u", j, a));
    for (int k = 1; k <= m; ++k) b.vertex(nm("v", j, k));
  }
  for (int i = 1; i <= n; ++i) {
    b.vertex(nm("x", i) + "t");
    b.vertex(nm("x", i) + "b");
  }
  if (h_legs) {
    for (int a = 0; a < 4; ++a) b.vertex(nm("h", a));
    for (int i = 1; i <= h_legs; ++i)
      for (int k = 0; k < 3; ++k) b.vertex(nm("s", i, k));
  }

  for (int k = 1; k <= p; ++k) {
    b.edge(nm("r", k) + "t", nm("r", k) + "b");
    b.paint(nm("r", k) + "t", nm("r", k) + "b", R);
  }
  for (int j = 1; j <= q; ++j) {
    const auto& clause = f.clauses[j - 1];
    const int nj = static_cast<int>(clause.size());
    for (int a = 0; a < 4; ++a)
      for (int c = a + 1; c < 4; ++c) {
        b.edge(nm("u", j, a), nm("u", j, c));
        b.paint(nm("u", j, a), nm("u", j, c), R);
      }
    for (int k = 1; k <= m; ++k) {
      std::string v = nm("v", j, k);
      std::string foot = k <= nj ? nm("x", clause[k - 1]) : nm("r", k - nj);
      for (const std::string& w : {nm("u", j, 0), nm("u", j, 1), foot + "t", foot + "b"}) {
        b.edge(v, w);
        b.paint(v, w, R);
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    b.edge(nm("x", i) + "t", nm("x", i) + "b");
    b.name_edge(nm("X", i), nm("x", i) + "t", nm("x", i) + "b");
  }
  for (int a = 0; a < 4 && h_legs; ++a)
    for (int c = a + 1; c < 4; ++c) {
      b.edge(nm("h", a), nm("h", c));
      b.paint(nm("h", a), nm("h", c), G);
    }
  for (int i = 1; i <= h_legs; ++i) {
    std::string s0 = nm("s", i, 0), s1 = nm("s", i, 1), s2 = nm("s", i, 2);
    for (const auto& [x, y] : {std::pair{std::string("h0"), s0}, {std::string("h1"), s0}, {s0, s1}, {s0, s2}}) {
      b.edge(x, y);
      b.paint(x, y, G);
    }
    b.edge(s1, s2);
    b.name_edge(nm("S", i), s1, s2);
  }

  ReductionOutput out = b.finish(variant, topus_graph(m));
  check_uncolored(out, static_cast<size_t>(n + h_legs));
  return out;
}

}  // namespace

ReductionOutput reduce_dnf_to_achieve_weak(const PositiveFormula& f) {
  return dnf_reduction(f, false, GameVariant::kAchieveWeak);
}

ReductionOutput reduce_dnf_to_achieve(const PositiveFormula& f) {
  return dnf_reduction(f, true, GameVariant::kAchieve);
}

ReductionOutput reduce(const PositiveFormula& f, ReductionKind kind) {
  switch (kind) {
    case ReductionKind::kAvoid: return reduce_cnf_to_avoid(f);
    case ReductionKind::kAchieveWeak: return reduce_dnf_to_achieve_weak(f);
    case ReductionKind::kAchieve: return reduce_dnf_to_achieve(f);
  }
  throw std::invalid_argument("unknown reduction kind");
}

ReductionCheck verify_reduction(const PositiveFormula& f, ReductionKind kind, uint64_t max_states) {
  ReductionCheck check;
  check.formula_winner = solve_formula_game(f);
  ReductionOutput out = reduce(f, kind);
  IncidenceSolveResult r = solve_incidence(out.spec, max_states);
  check.graph_value = r.root;
  check.graph_states = r.states;
  check.preserved = (check.formula_winner == FormulaWinner::kI) == (r.root == GameValue::kRedWin);
  return check;
}

}  // namespace ramsey
