#include "ramsey/canonical.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "color_matrix.h"

namespace ramsey {

namespace {

// Label assignment proceeds from label n-1 downwards. Giving vertex v the
// label L fixes the digits of edges {L, n-1}, {L, n-2}, ..., {L, L+1}, which
// are the most significant digits not yet fixed, in that order. Keeping only
// the partial sequences whose digit string is minimal therefore yields the
// minimal code.
struct SearchResult {
  std::vector<int> order;     // order[t] receives label n-1-t
  std::vector<uint8_t> sig;   // digits, most significant first
};

SearchResult search_min(const ColorMatrix& m, uint64_t budget) {
  const int n = m.n;
  if (n > 64) throw std::invalid_argument("canonical search supports n <= 64");
  std::vector<int> twin_rep = m.twin_representatives();

  struct Partial {
    std::vector<int> order;
    uint64_t used = 0;
  };
  std::vector<Partial> frontier(1);
  std::vector<uint8_t> sig;
  std::vector<uint8_t> best(n);
  std::vector<Partial> next;
  uint64_t nodes = 0;
  for (int t = 0; t < n; ++t) {
    next.clear();
    bool have_best = false;
    for (const Partial& part : frontier) {
      for (int v = 0; v < n; ++v) {
        if (part.used >> v & 1) continue;
        // Skip v when a smaller unused twin exists.
        bool shadowed = false;
        for (int w = twin_rep[v]; w < v; ++w) {
          if (twin_rep[w] == twin_rep[v] && !(part.used >> w & 1)) {
            shadowed = true;
            break;
          }
        }
        if (shadowed) continue;
        if (++nodes > budget) throw BudgetExceeded("canonical search budget exceeded");
        int cmp = 0;
        if (have_best) {
          for (int k = 0; k < t && cmp == 0; ++k) {
            uint8_t d = m.at(v, part.order[k]);
            if (d != best[k]) cmp = d < best[k] ? -1 : 1;
          }
        }
        if (have_best && cmp > 0) continue;
        if (!have_best || cmp < 0) {
          next.clear();
          for (int k = 0; k < t; ++k) best[k] = m.at(v, part.order[k]);
          have_best = true;
        }
        Partial child = part;
        child.order.push_back(v);
        child.used |= uint64_t{1} << v;
        next.push_back(std::move(child));
      }
    }
    sig.insert(sig.end(), best.begin(), best.begin() + t);
    frontier.swap(next);
  }
  return {frontier.front().order, sig};
}

SearchResult exhaustive_min(const ColorMatrix& m) {
  const int n = m.n;
  if (n > 8) throw std::invalid_argument("exhaustive canonicalization supports n <= 8");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  SearchResult best;
  std::vector<uint8_t> sig;
  do {
    sig.clear();
    for (int t = 1; t < n; ++t)
      for (int k = 0; k < t; ++k) sig.push_back(m.at(order[t], order[k]));
    if (best.order.empty() || sig < best.sig) best = {order, sig};
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

SearchResult run(const ColorMatrix& m, const CanonicalOptions& opt) {
  return opt.strategy == CanonicalStrategy::kExhaustive ? exhaustive_min(m)
                                                        : search_min(m, opt.node_budget);
}

SearchResult best_result(const ColoredPosition& p, const CanonicalOptions& opt, bool* swapped) {
  if (!p.board().is_complete())
    throw std::invalid_argument("canonicalization requires a complete board");
  ColorMatrix m(p);
  SearchResult r = run(m, opt);
  if (swapped) *swapped = false;
  if (opt.swap_colors) {
    ColorMatrix ms = m;
    ms.swap_red_green();
    SearchResult rs = run(ms, opt);
    if (rs.sig < r.sig) {
      r = std::move(rs);
      if (swapped) *swapped = true;
    }
  }
  return r;
}

std::vector<int> order_to_perm(const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<int> perm(n);
  for (int t = 0; t < n; ++t) perm[order[t]] = n - 1 - t;
  return perm;
}

}  // namespace

std::vector<int> canonical_labeling(const ColoredPosition& p, const CanonicalOptions& opt,
                                    bool* swapped) {
  return order_to_perm(best_result(p, opt, swapped).order);
}

uint64_t canonical_code64(const ColoredPosition& p, const CanonicalOptions& opt) {
  if (p.edge_count() > kMaxEdges64)
    throw std::length_error("board too large for 64-bit codes");
  SearchResult r = best_result(p, opt, nullptr);
  // sig lists digits for labels (n-2,n-1), (n-3,n-1), (n-3,n-2), ...
  const int n = p.vertex_count();
  const Graph& g = p.board();
  uint64_t code = 0;
  size_t pos = 0;
  for (int t = 1; t < n; ++t) {
    int a = n - 1 - t;
    for (int k = 0; k < t; ++k) {
      int b = n - 1 - k;
      code += r.sig[pos++] * pow3(g.edge_index(a, b));
    }
  }
  return code;
}

CanonicalForm canonicalize(const ColoredPosition& p, const CanonicalOptions& opt) {
  CanonicalForm f;
  f.perm = canonical_labeling(p, opt, &f.colors_swapped);
  ColoredPosition base = f.colors_swapped ? swap_colors(p) : p;
  f.representative = permute_position(base, f.perm);
  f.code = encode_position(f.representative);
  f.orbit_size = orbit_size(p);
  if (opt.swap_colors) {
    // Orbit under the group extended by the color exchange doubles unless
    // the exchange maps the class onto itself.
    CanonicalOptions plain = opt;
    plain.swap_colors = false;
    ColoredPosition q = swap_colors(p);
    bool self_dual = encode_position(permute_position(p, canonical_labeling(p, plain))) ==
                     encode_position(permute_position(q, canonical_labeling(q, plain)));
    if (!self_dual) f.orbit_size *= 2;
  }
  return f;
}

mpz_class factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

mpz_class orbit_size(const ColoredPosition& p) {
  mpz_class aut = automorphism_group_order(p);
  return factorial(p.vertex_count()) / aut;
}

}  // namespace ramsey
