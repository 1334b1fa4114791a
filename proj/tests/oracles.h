// Brute-force reference implementations. They share no logic with the
// library beyond plain data types, and are kept deliberately naive.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace oracle {

// Edge index of {i,j}, i<j, in lexicographic order on K_n.
inline int pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline int edges_of(int n) { return n * (n - 1) / 2; }

inline std::vector<std::pair<int, int>> pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

inline uint64_t encode(const std::vector<int>& colors) {
  uint64_t code = 0, w = 1;
  for (int c : colors) {
    code += static_cast<uint64_t>(c) * w;
    w *= 3;
  }
  return code;
}

inline std::vector<int> permuted(int n, const std::vector<int>& colors, const std::vector<int>& perm) {
  std::vector<int> out(colors.size(), 0);
  auto ps = pairs(n);
  for (size_t e = 0; e < ps.size(); ++e) out[pair_index(n, perm[ps[e].first], perm[ps[e].second])] = colors[e];
  return out;
}

inline std::vector<std::vector<int>> all_perms(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline uint64_t min_code(int n, const std::vector<int>& colors) {
  uint64_t best = UINT64_MAX;
  for (const auto& p : all_perms(n)) best = std::min(best, encode(permuted(n, colors, p)));
  return best;
}

inline uint64_t aut_order(int n, const std::vector<int>& colors) {
  uint64_t count = 0;
  for (const auto& p : all_perms(n))
    if (permuted(n, colors, p) == colors) ++count;
  return count;
}

// Whether color c contains K_k, by scanning every k-subset.
inline bool has_clique(int n, const std::vector<int>& colors, int c, int k) {
  if (k > n) return false;
  std::vector<int> pick(k);
  std::function<bool(int, int)> rec = [&](int start, int depth) {
    if (depth == k) return true;
    for (int v = start; v < n; ++v) {
      bool ok = true;
      for (int d = 0; d < depth && ok; ++d) ok = colors[pair_index(n, pick[d], v)] == c;
      if (!ok) continue;
      pick[depth] = v;
      if (rec(v + 1, depth + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

// Whether color c contains a copy of the pattern (vertex count m, edges),
// by trying every injective vertex map.
inline bool has_pattern(int n, const std::vector<int>& colors, int c, int m,
                        const std::vector<std::pair<int, int>>& pattern) {
  if (m > n) return false;
  std::vector<int> img(m, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> rec = [&](int i) {
    if (i == m) {
      for (auto [a, b] : pattern)
        if (colors[pair_index(n, img[a], img[b])] != c) return false;
      return true;
    }
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      img[i] = v;
      if (rec(i + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return rec(0);
}

// Game values as in the library: 0 red wins, 1 red loses, 2 tie.
enum Variant { kAvoid, kMisere, kPlus, kAchieve, kAchievePrime, kAchieveWeak, kAsym };

inline int pref(int value, int mover) {
  if (value == 2) return 1;
  bool red_wins = value == 0;
  return (mover == 0) == red_wins ? 2 : 0;
}
inline int win_of(int player) { return player == 0 ? 0 : 1; }

// Exhaustive minimax on K_n with clique targets kr (red) and kg (green).
class GameOracle {
 public:
  GameOracle(int n, Variant v, int kr, int kg) : n_(n), v_(v), k_{kr, kg} {}

  int solve() {
    std::vector<int> colors(edges_of(n_), 0);
    return visit(colors, 0);
  }
  size_t states() const { return memo_.size(); }

 private:
  bool mono(const std::vector<int>& colors, int player) const {
    return has_clique(n_, colors, player + 1, k_[player]);
  }

  int visit(std::vector<int>& colors, int mover) {
    uint64_t key = encode(colors) * 2 + static_cast<uint64_t>(mover);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const int opp = 1 - mover;
    const int E = edges_of(n_);
    int best = -1, value = 2;
    auto take = [&](int v) {
      if (pref(v, mover) > best) {
        best = pref(v, mover);
        value = v;
      }
    };
    std::vector<int> free;
    for (int e = 0; e < E; ++e)
      if (colors[e] == 0) free.push_back(e);
    if (v_ == kPlus) {
      for (uint32_t mask = 1; mask < (1u << free.size()); ++mask) {
        for (size_t i = 0; i < free.size(); ++i)
          if (mask >> i & 1) colors[free[i]] = mover + 1;
        if (!mono(colors, mover)) take(visit(colors, opp));
        for (size_t i = 0; i < free.size(); ++i)
          if (mask >> i & 1) colors[free[i]] = 0;
      }
    } else {
      for (int e : free) {
        colors[e] = mover + 1;
        bool made = mono(colors, mover);
        bool full = free.size() == 1;
        if (v_ == kAvoid || v_ == kAsym) {
          if (!made) take(visit(colors, opp));
        } else if (v_ == kMisere) {
          take(made ? win_of(opp) : full ? 2 : visit(colors, opp));
        } else if (v_ == kAchieve) {
          take(made ? win_of(mover) : full ? 2 : visit(colors, opp));
        } else if (v_ == kAchievePrime) {
          take(made ? win_of(mover) : full ? win_of(1) : visit(colors, opp));
        } else {  // weak: only red's completion counts
          take(made && mover == 0 ? win_of(0) : full ? win_of(1) : visit(colors, opp));
        }
        colors[e] = 0;
      }
    }
    if (best < 0) value = win_of(opp);
    memo_[key] = value;
    return value;
  }

  int n_;
  Variant v_;
  int k_[2];
  std::unordered_map<uint64_t, int> memo_;
};

// Calls fn(code, digits) once per S_n orbit of colorings of K_n, with the
// smallest labeled code of the orbit. Marks orbits in a bitmap over 3^E.
inline void for_each_orbit_rep(int n, const std::function<void(uint64_t, const std::vector<int>&)>& fn) {
  const int E = edges_of(n);
  uint64_t total = 1;
  for (int i = 0; i < E; ++i) total *= 3;
  std::vector<bool> seen(total, false);
  auto ps = pairs(n);
  std::vector<std::vector<int>> edge_perm;
  for (const auto& p : all_perms(n)) {
    std::vector<int> ep(E);
    for (int e = 0; e < E; ++e) ep[e] = pair_index(n, p[ps[e].first], p[ps[e].second]);
    edge_perm.push_back(ep);
  }
  std::vector<uint64_t> pow3(E + 1, 1);
  for (int i = 1; i <= E; ++i) pow3[i] = pow3[i - 1] * 3;
  std::vector<int> digits(E);
  for (uint64_t code = 0; code < total; ++code) {
    if (seen[code]) continue;
    uint64_t c = code;
    for (int e = 0; e < E; ++e) {
      digits[e] = static_cast<int>(c % 3);
      c /= 3;
    }
    for (const auto& ep : edge_perm) {
      uint64_t img = 0;
      for (int e = 0; e < E; ++e) img += digits[e] * pow3[ep[e]];
      seen[img] = true;
    }
    fn(code, digits);
  }
}

// Number of S_n orbits of colorings of K_n with r red and g green edges.
inline std::map<std::pair<int, int>, uint64_t> orbit_counts(int n) {
  std::map<std::pair<int, int>, uint64_t> out;
  for_each_orbit_rep(n, [&](uint64_t, const std::vector<int>& d) {
    int r = static_cast<int>(std::count(d.begin(), d.end(), 1));
    int g = static_cast<int>(std::count(d.begin(), d.end(), 2));
    ++out[{r, g}];
  });
  return out;
}

// Every completion of the uncolored edges contains a monochromatic copy.
inline bool arrows(int n, std::vector<int> colors, int m, const std::vector<std::pair<int, int>>& pattern) {
  std::vector<int> free;
  for (size_t e = 0; e < colors.size(); ++e)
    if (colors[e] == 0) free.push_back(static_cast<int>(e));
  for (uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    for (size_t i = 0; i < free.size(); ++i) colors[free[i]] = (mask >> i & 1) ? 1 : 2;
    if (!has_pattern(n, colors, 1, m, pattern) && !has_pattern(n, colors, 2, m, pattern)) return false;
  }
  return true;
}

// Maker/breaker style formula game: I and II alternately set a free
// variable true (I) or false (II), I first. CNF: I wins iff every clause
// ends with a true variable. DNF: I wins iff some clause ends all true.
inline bool formula_first_wins(int n, const std::vector<std::vector<int>>& clauses, bool cnf) {
  std::function<bool(std::vector<int>&, int)> play = [&](std::vector<int>& a, int turn) {
    bool any_free = std::find(a.begin(), a.end(), -1) != a.end();
    if (!any_free) {
      auto clause_true = [&](const std::vector<int>& c, bool need_all) {
        if (need_all) return std::all_of(c.begin(), c.end(), [&](int x) { return a[x - 1] == 1; });
        return std::any_of(c.begin(), c.end(), [&](int x) { return a[x - 1] == 1; });
      };
      if (cnf) return std::all_of(clauses.begin(), clauses.end(), [&](const auto& c) { return clause_true(c, false); });
      return std::any_of(clauses.begin(), clauses.end(), [&](const auto& c) { return clause_true(c, true); });
    }
    bool first = turn == 0;
    for (int i = 0; i < n; ++i) {
      if (a[i] != -1) continue;
      a[i] = first ? 1 : 0;
      bool w = play(a, 1 - turn);
      a[i] = -1;
      if (w == first) return first;
    }
    return !first;
  };
  std::vector<int> a(n, -1);
  return play(a, 0);
}

}  // namespace oracle
