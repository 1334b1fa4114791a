#include "ramsey/witness.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ramsey/subgraph.h"

namespace ramsey {

namespace {

// Extends clique with vertices from cand (all adjacent to the clique in
// color c) until it has k vertices.
bool find_clique(const ColoredPosition& p, Color c, int k, std::vector<int>& clique,
                 const std::vector<int>& cand) {
  if (static_cast<int>(clique.size()) == k) return true;
  if (static_cast<int>(clique.size() + cand.size()) < k) return false;
  for (size_t i = 0; i < cand.size(); ++i) {
    int v = cand[i];
    std::vector<int> next;
    for (size_t j = i + 1; j < cand.size(); ++j)
      if (p.color(v, cand[j]) == c) next.push_back(cand[j]);
    clique.push_back(v);
    if (find_clique(p, c, k, clique, next)) return true;
    clique.pop_back();
  }
  return false;
}

ColoredPosition start_position(const GameSpec& spec) {
  ColoredPosition p(spec.board);
  for (int e : spec.precolor_red) p.set_color(e, Color::kRed);
  for (int e : spec.precolor_green) p.set_color(e, Color::kGreen);
  return p;
}

bool holds_target(const ColoredPosition& p, const GameSpec& spec) {
  return contains_mono(p, Color::kRed, spec.target_red) || contains_mono(p, Color::kGreen, spec.target_green);
}

// A coloring of `red` red and `green` green edges from free[idx..] with no
// monochromatic target.
bool avoidable(ColoredPosition& p, const GameSpec& spec, const std::vector<int>& free, size_t idx, int red,
               int green) {
  if (red == 0 && green == 0) return true;
  if (free.size() - idx < static_cast<size_t>(red + green)) return false;
  int e = free[idx];
  if (red > 0 && !move_completes(p, e, Color::kRed, spec.target_red)) {
    p.set_color(e, Color::kRed);
    bool ok = avoidable(p, spec, free, idx + 1, red - 1, green);
    p.set_color(e, Color::kUncolored);
    if (ok) return true;
  }
  if (green > 0 && !move_completes(p, e, Color::kGreen, spec.target_green)) {
    p.set_color(e, Color::kGreen);
    bool ok = avoidable(p, spec, free, idx + 1, red, green - 1);
    p.set_color(e, Color::kUncolored);
    if (ok) return true;
  }
  return avoidable(p, spec, free, idx + 1, red, green);
}

}  // namespace

WitnessReport verify_witness(const ColoredPosition& p, int k) {
  if (!p.board().is_complete()) throw std::invalid_argument("witness must be on a complete board");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const int n = p.vertex_count();
  WitnessReport rep;
  rep.complete = p.is_full();
  rep.red_degree.assign(n, 0);
  rep.green_degree.assign(n, 0);
  for (const Edge& e : p.board().edges()) {
    Color c = p.color(e.u, e.v);
    if (c == Color::kRed) ++rep.red_degree[e.u], ++rep.red_degree[e.v];
    if (c == Color::kGreen) ++rep.green_degree[e.u], ++rep.green_degree[e.v];
  }
  rep.regular = true;
  for (int v = 1; v < n; ++v)
    if (rep.red_degree[v] != rep.red_degree[0] || rep.green_degree[v] != rep.green_degree[0]) rep.regular = false;

  rep.mono_free = true;
  std::vector<int> all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  for (Color c : {Color::kRed, Color::kGreen}) {
    std::vector<int> clique;
    if (find_clique(p, c, k, clique, all)) {
      rep.mono_free = false;
      rep.clique = clique;
      rep.clique_color = c;
      break;
    }
  }
  return rep;
}

ColoredPosition extend_by_duplicate(const ColoredPosition& p, int v) {
  if (!p.board().is_complete()) throw std::invalid_argument("duplicate needs a complete board");
  if (!p.is_full()) throw std::invalid_argument("duplicate needs a fully colored board");
  const int n = p.vertex_count();
  if (v < 0 || v >= n) throw std::out_of_range("vertex out of range");
  ColoredPosition out(complete_board(n + 1));
  for (const Edge& e : p.board().edges()) out.set_color(out.board().edge_index(e.u, e.v), p.color(e.u, e.v));
  for (int x = 0; x < n; ++x)
    if (x != v) out.set_color(out.board().edge_index(x, n), p.color(x, v));
  return out;
}

ColoredPosition paley_coloring(int q) {
  if (q < 5 || q % 4 != 1) throw std::invalid_argument("need a prime q = 1 mod 4");
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) throw std::invalid_argument("need a prime q = 1 mod 4");
  std::vector<bool> square(q, false);
  for (int x = 1; x < q; ++x) square[x * x % q] = true;
  ColoredPosition p(complete_board(q));
  for (const Edge& e : p.board().edges()) {
    int d = ((e.u - e.v) % q + q) % q;
    p.set_color(p.board().edge_index(e.u, e.v), square[d] ? Color::kRed : Color::kGreen);
  }
  return p;
}

std::string format_witness(const ColoredPosition& p) {
  if (!p.board().is_complete()) throw std::invalid_argument("witness must be on a complete board");
  std::ostringstream out;
  out << p.vertex_count() << '\n';
  for (const Edge& e : p.board().edges()) {
    Color c = p.color(e.u, e.v);
    out << e.u << ' ' << e.v << ' ' << (c == Color::kRed ? 'r' : c == Color::kGreen ? 'g' : 'u') << '\n';
  }
  return out.str();
}

ColoredPosition parse_witness(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  int lineno = 0;
  std::optional<ColoredPosition> p;
  std::vector<bool> seen;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("witness line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (n < 0) {
      try {
        n = std::stoi(first);
      } catch (const std::exception&) {
        fail("expected vertex count");
      }
      if (n < 1 || n > 64) fail("vertex count out of range");
      p.emplace(complete_board(n));
      seen.assign(p->edge_count(), false);
      continue;
    }
    int i, j;
    std::string c;
    try {
      i = std::stoi(first);
    } catch (const std::exception&) {
      fail("expected 'i j c'");
    }
    if (!(ls >> j >> c) || c.size() != 1) fail("expected 'i j c'");
    std::string rest;
    if (ls >> rest) fail("trailing text");
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) fail("bad vertex pair");
    int e = p->board().edge_index(i, j);
    if (seen[e]) fail("edge listed twice");
    seen[e] = true;
    switch (c[0]) {
      case 'r': p->set_color(e, Color::kRed); break;
      case 'g': p->set_color(e, Color::kGreen); break;
      case 'u': break;
      default: fail("color must be r, g or u");
    }
  }
  if (n < 0) throw std::invalid_argument("witness is empty");
  for (bool s : seen)
    if (!s) throw std::invalid_argument("witness does not list every edge");
  return *p;
}

ColoredPosition load_witness(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_witness(buf.str());
}

std::optional<int> arrowing_threshold_c(const GameSpec& spec, int max_uncolored) {
  ColoredPosition p = start_position(spec);
  if (holds_target(p, spec)) return 0;
  std::vector<int> free;
  for (int e = 0; e < p.edge_count(); ++e)
    if (p.color(e) == Color::kUncolored) free.push_back(e);
  if (static_cast<int>(free.size()) > max_uncolored)
    throw std::length_error("arrowing threshold: too many uncolored edges");
  for (int s = 1; s <= static_cast<int>(free.size()); ++s)
    if (!avoidable(p, spec, free, 0, (s + 1) / 2, s / 2)) return s;
  return std::nullopt;
}

}  // namespace ramsey
