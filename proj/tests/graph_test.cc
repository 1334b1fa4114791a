#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles.h"
#include "ramsey/canonical.h"
#include "ramsey/graph.h"
#include "ramsey/subgraph.h"

using namespace ramsey;

namespace {

std::vector<int> digits_of(const ColoredPosition& p) { return {p.digits().begin(), p.digits().end()}; }

ColoredPosition random_position(int n, std::mt19937_64& rng, int max_color = 2) {
  ColoredPosition p(complete_board(n));
  std::uniform_int_distribution<int> d(0, max_color);
  for (int e = 0; e < p.edge_count(); ++e) p.set_color(e, static_cast<Color>(d(rng)));
  return p;
}

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// Red pentagon, green pentagram.
ColoredPosition five_cycle_coloring() {
  ColoredPosition p(complete_board(5));
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      int d = j - i;
      p.set_color(p.board().edge_index(i, j), (d == 1 || d == 4) ? Color::kRed : Color::kGreen);
    }
  return p;
}

std::vector<std::pair<int, int>> pattern_edges(const Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : g.edges()) out.push_back({e.u, e.v});
  return out;
}

}  // namespace

TEST(Encoding, FixedExamples) {
  auto k6 = complete_board(6);
  EXPECT_EQ(decode_position64(0, k6).uncolored_count(), 15);
  ColoredPosition two = decode_position64(2, k6);
  EXPECT_EQ(two.color(0), Color::kGreen);
  EXPECT_EQ(two.green_count(), 1);
  ColoredPosition all_red = decode_position64(7174453, k6);
  EXPECT_EQ(all_red.red_count(), 15);
}

TEST(Encoding, RoundTrips) {
  std::mt19937_64 rng(1);
  for (int n : {2, 5, 6, 9}) {
    for (int t = 0; t < 200; ++t) {
      ColoredPosition p = random_position(n, rng);
      EXPECT_EQ(decode_position64(encode_position64(p), p.board_ptr()), p);
      EXPECT_EQ(decode_position(encode_position(p), p.board_ptr()), p);
      EXPECT_EQ(encode_position(p), mpz_class(std::to_string(encode_position64(p))));
      EXPECT_EQ(encode_position64(p), oracle::encode(digits_of(p)));
      EXPECT_EQ(parse_position(format_position(p)), p);
    }
  }
  auto k18 = complete_board(18);
  for (int t = 0; t < 50; ++t) {
    ColoredPosition p = random_position(18, rng);
    mpz_class code = encode_position(p);
    EXPECT_EQ(decode_position(code, k18), p);
    EXPECT_EQ(encode_position(decode_position(code, k18)), code);
  }
}

TEST(Encoding, GeneralBoardText) {
  auto board = make_board(Graph(4, {{0, 1}, {1, 2}, {2, 3}}));
  ColoredPosition p(board);
  p.set_color(1, Color::kRed);
  ColoredPosition q = parse_position(format_position(p));
  EXPECT_EQ(q, p);
  EXPECT_FALSE(q.board().is_complete());
}

TEST(Canonical, SingleEdgeClass) {
  auto k6 = complete_board(6);
  CanonicalForm first = canonicalize(ColoredPosition(k6));
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.orbit_size, 1);
  std::set<mpz_class> keys;
  for (int e = 0; e < 15; ++e) {
    ColoredPosition p(k6);
    p.set_color(e, Color::kRed);
    CanonicalForm f = canonicalize(p);
    keys.insert(f.code);
    EXPECT_EQ(f.orbit_size, 15);
    EXPECT_EQ(oracle::aut_order(6, digits_of(p)), 48u);
  }
  EXPECT_EQ(keys.size(), 1u);
}

TEST(Canonical, MatchesExhaustiveMinimum) {
  std::mt19937_64 rng(2);
  for (int n : {3, 4, 5, 6}) {
    for (int t = 0; t < (n == 6 ? 150 : 300); ++t) {
      ColoredPosition p = random_position(n, rng);
      auto d = digits_of(p);
      uint64_t want = oracle::min_code(n, d);
      EXPECT_EQ(canonical_code64(p), want);
      CanonicalOptions ex;
      ex.strategy = CanonicalStrategy::kExhaustive;
      EXPECT_EQ(canonical_code64(p, ex), want);
      CanonicalForm f = canonicalize(p);
      EXPECT_EQ(f.code, mpz_class(std::to_string(want)));
      EXPECT_EQ(encode_position(f.representative), f.code);
      EXPECT_EQ(permute_position(p, f.perm), f.representative);
      EXPECT_EQ(automorphism_group_order(p), oracle::aut_order(n, d));
      EXPECT_EQ(f.orbit_size * automorphism_group_order(p), factorial(n));
    }
  }
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937_64 rng(3);
  for (int n : {6, 7, 9, 12}) {
    for (int t = 0; t < 40; ++t) {
      // Sparse colorings carry large automorphism groups, dense ones few.
      ColoredPosition p = random_position(n, rng, t % 2 ? 2 : 1);
      CanonicalForm f = canonicalize(p);
      ColoredPosition q = permute_position(p, random_perm(n, rng));
      CanonicalForm g = canonicalize(q);
      EXPECT_EQ(f.code, g.code);
      EXPECT_EQ(f.orbit_size, g.orbit_size);
      EXPECT_EQ(canonicalize(f.representative).code, f.code);
    }
  }
}

TEST(Canonical, SwapQuotient) {
  std::mt19937_64 rng(4);
  CanonicalOptions sw;
  sw.swap_colors = true;
  for (int t = 0; t < 100; ++t) {
    ColoredPosition p = random_position(6, rng);
    uint64_t a = canonical_code64(p, sw);
    EXPECT_EQ(a, canonical_code64(swap_colors(p), sw));
    EXPECT_EQ(a, std::min(canonical_code64(p), canonical_code64(swap_colors(p))));
  }
}

// Sum of orbit sizes over the classes with r red and g green edges counts
// every labeled coloring once.
TEST(Canonical, OrbitSumIdentityK6) {
  std::map<std::pair<int, int>, mpz_class> sums;
  uint64_t checked = 0;
  oracle::for_each_orbit_rep(6, [&](uint64_t code, const std::vector<int>& d) {
    ColoredPosition p = decode_position64(code, complete_board(6));
    int r = static_cast<int>(std::count(d.begin(), d.end(), 1));
    int g = static_cast<int>(std::count(d.begin(), d.end(), 2));
    if (checked++ % 7 == 0) {
      ASSERT_EQ(canonical_code64(p), code);
    }
    sums[{r, g}] += orbit_size(p);
  });
  auto binom = [](int a, int b) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), a, b);
    return out;
  };
  for (int r = 0; r <= 15; ++r)
    for (int g = 0; r + g <= 15; ++g) {
      mpz_class want = binom(15, r) * binom(15 - r, g);
      EXPECT_EQ(sums[std::make_pair(r, g)], want) << r << "," << g;
    }
}

TEST(Subgraph, Examples) {
  auto k6 = complete_board(6);
  ColoredPosition p(k6);
  EXPECT_FALSE(contains_mono(p, Color::kRed, clique_graph(3)));
  p.set_color(k6->edge_index(0, 1), Color::kRed);
  p.set_color(k6->edge_index(1, 2), Color::kRed);
  EXPECT_TRUE(move_completes(p, k6->edge_index(0, 2), Color::kRed, clique_graph(3)));
  EXPECT_FALSE(move_completes(p, k6->edge_index(3, 4), Color::kRed, clique_graph(3)));
  p.set_color(k6->edge_index(0, 2), Color::kRed);
  EXPECT_TRUE(contains_mono(p, Color::kRed, clique_graph(3)));

  ColoredPosition five = five_cycle_coloring();
  EXPECT_FALSE(contains_mono(five, Color::kRed, clique_graph(3)));
  EXPECT_FALSE(contains_mono(five, Color::kGreen, clique_graph(3)));
}

TEST(Subgraph, TargetShapes) {
  Graph bt = bow_tie_graph();
  EXPECT_EQ(bt.vertex_count(), 5);
  EXPECT_EQ(bt.edge_count(), 6);
  for (int m = 1; m <= 4; ++m) {
    Graph t = topus_graph(m);
    EXPECT_EQ(t.vertex_count(), 4 + 3 * m);
    EXPECT_EQ(t.edge_count(), 6 + 5 * m);
  }
  EXPECT_EQ(clique_order(clique_graph(5)), 5);
  EXPECT_EQ(clique_order(bt), 0);
}

TEST(Subgraph, ContainsMatchesBruteForce) {
  std::mt19937_64 rng(5);
  std::vector<Graph> targets = {clique_graph(3), clique_graph(4), bow_tie_graph(), Graph(4, {{0, 1}, {1, 2}, {2, 3}})};
  for (int t = 0; t < 400; ++t) {
    int n = 5 + t % 3;
    ColoredPosition p = random_position(n, rng);
    auto d = digits_of(p);
    for (const Graph& a : targets)
      for (Color c : {Color::kRed, Color::kGreen})
        ASSERT_EQ(contains_mono(p, c, a),
                  oracle::has_pattern(n, d, static_cast<int>(c), a.vertex_count(), pattern_edges(a)));
  }
  // Topus targets on a board large enough to hold them.
  for (int t = 0; t < 30; ++t) {
    ColoredPosition p = random_position(8, rng, 1);
    ASSERT_EQ(contains_mono(p, Color::kRed, topus_graph(1)),
              oracle::has_pattern(8, digits_of(p), 1, 7, pattern_edges(topus_graph(1))));
  }
}

TEST(Subgraph, MoveCompletesMatchesRecheck) {
  std::mt19937_64 rng(6);
  auto k3 = clique_graph(3);
  int agree = 0;
  for (int t = 0; t < 10000; ++t) {
    ColoredPosition p = random_position(6, rng);
    std::vector<int> free;
    for (int e = 0; e < 15; ++e)
      if (p.color(e) == Color::kUncolored) free.push_back(e);
    if (free.empty()) continue;
    int e = free[rng() % free.size()];
    Color c = rng() % 2 ? Color::kRed : Color::kGreen;
    if (contains_mono(p, c, k3)) continue;
    ColoredPosition q = p;
    q.set_color(e, c);
    ASSERT_EQ(move_completes(p, e, c, k3), contains_mono(q, c, k3));
    ++agree;
  }
  EXPECT_GT(agree, 1000);
}

TEST(Subgraph, Monotone) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    ColoredPosition p = random_position(6, rng);
    for (Color c : {Color::kRed, Color::kGreen}) {
      if (!contains_mono(p, c, clique_graph(3))) continue;
      for (int e = 0; e < 15; ++e) {
        if (p.color(e) != Color::kUncolored) continue;
        ColoredPosition q = p;
        q.set_color(e, c);
        ASSERT_TRUE(contains_mono(q, c, clique_graph(3)));
      }
    }
  }
}

TEST(Arrows, Examples) {
  EXPECT_TRUE(arrows(ColoredPosition(complete_board(6)), clique_graph(3)));
  EXPECT_FALSE(arrows(ColoredPosition(complete_board(5)), clique_graph(3)));
  ColoredPosition k3(complete_board(3));
  k3.set_color(0, Color::kRed);
  EXPECT_TRUE(arrows(k3, clique_graph(2)));
}

TEST(Arrows, MatchesDoubleEnumeration) {
  std::mt19937_64 rng(8);
  std::vector<Graph> targets = {clique_graph(3), Graph(3, {{0, 1}, {1, 2}})};
  for (int t = 0; t < 150; ++t) {
    int n = 4 + t % 3;
    ColoredPosition p(complete_board(n));
    std::vector<int> order(p.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    int colored = std::max(0, p.edge_count() - 10) + static_cast<int>(rng() % 3);
    for (int i = 0; i < colored && i < p.edge_count(); ++i)
      p.set_color(order[i], rng() % 2 ? Color::kRed : Color::kGreen);
    for (const Graph& a : targets)
      ASSERT_EQ(arrows(p, a), oracle::arrows(n, digits_of(p), a.vertex_count(), pattern_edges(a)));
  }
}

TEST(Arrows, CapIsEnforced) {
  ArrowOptions opt;
  opt.max_uncolored = 10;
  EXPECT_THROW(arrows(ColoredPosition(complete_board(6)), clique_graph(3), opt), std::exception);
}
