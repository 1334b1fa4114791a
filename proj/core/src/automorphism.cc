// Automorphism group order by individualization and refinement. The first
// path to a discrete partition gives a reference labeling; for each level,
// deepest first, the orbit of the individualized vertex under the pointwise
// stabilizer of the earlier ones is found by searching for leaves that
// reproduce the reference coloring. |Aut| is the product of those orbits.

#include <numeric>

#include "color_matrix.h"
#include "ramsey/canonical.h"

namespace ramsey {

namespace {

using Cells = std::vector<std::vector<int>>;

class Refiner {
 public:
  explicit Refiner(const ColorMatrix& m) : m_(m), key_(m.n) {}

  // Splits cells by the number of neighbours of each color in each cell
  // until the partition is equitable. Subcells are ordered by count, so the
  // result depends only on the input order: it commutes with isomorphisms.
  void refine(Cells& cells) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t s = 0; s < cells.size(); ++s) {
        for (size_t c = 0; c < cells.size(); ++c) {
          if (cells[c].size() < 2) continue;
          if (split(cells, c, s)) {
            changed = true;
          }
        }
      }
    }
  }

 private:
  bool split(Cells& cells, size_t c, size_t s) {
    std::vector<int>& cell = cells[c];
    const std::vector<int>& splitter = cells[s];
    for (int v : cell) {
      uint64_t k = 0;
      for (int w : splitter) {
        if (w == v) continue;
        k += uint64_t{1} << (16 * m_.at(v, w));
      }
      key_[v] = k;
    }
    bool uniform = true;
    for (int v : cell) {
      if (key_[v] != key_[cell[0]]) {
        uniform = false;
        break;
      }
    }
    if (uniform) return false;
    std::vector<int> sorted = cell;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](int a, int b) { return key_[a] < key_[b]; });
    Cells parts;
    for (int v : sorted) {
      if (parts.empty() || key_[parts.back().back()] != key_[v]) parts.emplace_back();
      parts.back().push_back(v);
    }
    cells.erase(cells.begin() + c);
    cells.insert(cells.begin() + c, parts.begin(), parts.end());
    return true;
  }

  const ColorMatrix& m_;
  std::vector<uint64_t> key_;
};

int first_nonsingleton(const Cells& cells) {
  for (size_t i = 0; i < cells.size(); ++i)
    if (cells[i].size() > 1) return static_cast<int>(i);
  return -1;
}

Cells individualize(const Cells& cells, int idx, int v) {
  Cells out;
  out.reserve(cells.size() + 1);
  for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
    if (i != idx) {
      out.push_back(cells[i]);
      continue;
    }
    out.push_back({v});
    std::vector<int> rest;
    for (int w : cells[i])
      if (w != v) rest.push_back(w);
    out.push_back(std::move(rest));
  }
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

class AutSearch {
 public:
  AutSearch(const ColorMatrix& m, uint64_t budget) : m_(m), refiner_(m), budget_(budget) {}

  mpz_class order() {
    const int n = m_.n;
    if (n <= 1) return 1;
    Cells root{std::vector<int>(n)};
    std::iota(root[0].begin(), root[0].end(), 0);
    refiner_.refine(root);
    // Reference path.
    path_.push_back(root);
    while (true) {
      int idx = first_nonsingleton(path_.back());
      if (idx < 0) break;
      int v = path_.back()[idx].front();
      targets_.push_back({idx, v});
      Cells next = individualize(path_.back(), idx, v);
      refiner_.refine(next);
      path_.push_back(std::move(next));
    }
    for (const auto& cell : path_.back()) reference_.push_back(cell.front());

    UnionFind uf(n);
    mpz_class result = 1;
    for (int level = static_cast<int>(targets_.size()) - 1; level >= 0; --level) {
      auto [idx, t] = targets_[level];
      const std::vector<int>& cell = path_[level][idx];
      for (int w : cell) {
        if (w == t || uf.find(w) == uf.find(t)) continue;
        std::vector<int> gamma;
        if (m_.twins(t, w)) {
          gamma.resize(n);
          std::iota(gamma.begin(), gamma.end(), 0);
          std::swap(gamma[t], gamma[w]);
        } else {
          Cells start = individualize(path_[level], idx, w);
          refiner_.refine(start);
          if (!find_leaf(start, level + 1, gamma)) continue;
        }
        for (int x = 0; x < n; ++x) uf.unite(x, gamma[x]);
      }
      long orbit = 0;
      for (int w : cell)
        if (uf.find(w) == uf.find(t)) ++orbit;
      result *= orbit;
    }
    return result;
  }

 private:
  static bool same_shape(const Cells& a, const Cells& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].size() != b[i].size()) return false;
    return true;
  }

  bool find_leaf(const Cells& cells, size_t depth, std::vector<int>& gamma) {
    if (++nodes_ > budget_) throw BudgetExceeded("automorphism search budget exceeded");
    if (depth >= path_.size() || !same_shape(cells, path_[depth])) return false;
    int idx = first_nonsingleton(cells);
    if (idx < 0) {
      const int n = m_.n;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (m_.at(reference_[a], reference_[b]) != m_.at(cells[a][0], cells[b][0]))
            return false;
      gamma.assign(n, 0);
      for (int a = 0; a < n; ++a) gamma[reference_[a]] = cells[a][0];
      return true;
    }
    for (int x : cells[idx]) {
      Cells next = individualize(cells, idx, x);
      refiner_.refine(next);
      if (find_leaf(next, depth + 1, gamma)) return true;
    }
    return false;
  }

  const ColorMatrix& m_;
  Refiner refiner_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  std::vector<Cells> path_;
  std::vector<std::pair<int, int>> targets_;
  std::vector<int> reference_;
};

}  // namespace

mpz_class automorphism_group_order(const ColoredPosition& p, uint64_t node_budget) {
  ColorMatrix m(p);
  AutSearch search(m, node_budget);
  return search.order();
}

}  // namespace ramsey
