#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "oracles.h"
#include "ramsey/canonical.h"
#include "ramsey/estimate.h"
#include "ramsey/polya.h"
#include "ramsey/subgraph.h"

using namespace ramsey;

namespace {

// Non-increasing part lists summing to n, by recursion on the largest part.
std::set<std::vector<int>> brute_partitions(int n) {
  std::set<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.insert(cur);
      return;
    }
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<int> parts_of(const Partition& p) {
  std::vector<int> out;
  for (int i = static_cast<int>(p.m.size()) - 1; i >= 1; --i)
    for (int c = 0; c < p.m[i]; ++c) out.push_back(i);
  return out;
}

// Classes with r = g or r = g + 1 and no monochromatic K_k.
uint64_t exact_mono_free_classes(int n, int k) {
  uint64_t count = 0;
  oracle::for_each_orbit_rep(n, [&](uint64_t, const std::vector<int>& d) {
    int r = static_cast<int>(std::count(d.begin(), d.end(), 1));
    int g = static_cast<int>(std::count(d.begin(), d.end(), 2));
    if (r != g && r != g + 1) return;
    if (oracle::has_clique(n, d, 1, k) || oracle::has_clique(n, d, 2, k)) return;
    ++count;
  });
  return count;
}

}  // namespace

TEST(Partitions, MatchBruteForce) {
  EXPECT_EQ(partitions(1).size(), 1u);
  EXPECT_EQ(partitions(5).size(), 7u);
  EXPECT_EQ(partitions(18).size(), 385u);
  for (int n = 1; n <= 18; ++n) {
    std::set<std::vector<int>> got;
    for (const Partition& p : partitions(n)) {
      EXPECT_EQ(p.n(), n);
      got.insert(parts_of(p));
    }
    EXPECT_EQ(got, brute_partitions(n)) << n;
    EXPECT_EQ(got.size(), partitions(n).size()) << "duplicates at " << n;
  }
}

TEST(CycleIndex, Normalization) {
  for (int n = 2; n <= 12; ++n) {
    auto z = cycle_index_pair_group(n);
    EXPECT_EQ(z.size(), partitions(n).size());
    EXPECT_EQ(evaluate_cycle_index(z, 1), 1) << n;
    for (const auto& mono : z) {
      int degree = 0;
      for (size_t i = 1; i < mono.exponents.size(); ++i) degree += static_cast<int>(i) * mono.exponents[i];
      EXPECT_EQ(degree, n * (n - 1) / 2);
    }
  }
  auto z3 = cycle_index_pair_group(3);
  EXPECT_EQ(evaluate_cycle_index(z3, 2), 4);
  EXPECT_EQ(evaluate_cycle_index(z3, 3), 10);
}

// Evaluating at 2 and 3 counts orbits of 2- and 3-colorings.
TEST(CycleIndex, CountsOrbits) {
  for (int n = 2; n <= 5; ++n) {
    auto counts = oracle::orbit_counts(n);
    uint64_t three = 0, two = 0;
    for (const auto& [rg, c] : counts) {
      three += c;
      if (rg.second == 0) two += c;
    }
    auto z = cycle_index_pair_group(n);
    EXPECT_EQ(evaluate_cycle_index(z, 3), mpq_class(mpz_class(std::to_string(three))));
    EXPECT_EQ(evaluate_cycle_index(z, 2), mpq_class(mpz_class(std::to_string(two))));
  }
}

TEST(Polya, MatchesOrbitEnumerationSmall) {
  for (int n = 2; n <= 5; ++n) {
    auto counts = oracle::orbit_counts(n);
    const int E = n * (n - 1) / 2;
    for (int r = 0; r <= E; ++r)
      for (int g = 0; r + g <= E; ++g) {
        auto it = counts.find({r, g});
        uint64_t want = it == counts.end() ? 0 : it->second;
        EXPECT_EQ(count_colorings(n, r, g), mpz_class(std::to_string(want))) << n << " " << r << " " << g;
      }
  }
}

TEST(Polya, Examples) {
  EXPECT_EQ(count_colorings(3, 1, 1), 1);
  EXPECT_EQ(total_legal_positions(2), 2);
  EXPECT_GE(total_legal_positions(6), 3728);
  std::mt19937_64 rng(51);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng() % 17);
    int E = n * (n - 1) / 2;
    int r = static_cast<int>(rng() % (E + 1));
    int g = static_cast<int>(rng() % (E - r + 1));
    mpz_class c = count_colorings(n, r, g);
    EXPECT_EQ(c, count_colorings(n, g, r));
    EXPECT_GE(c, 1);
  }
}

TEST(Sampling, CountsAndMarginals) {
  Rng rng(52);
  EXPECT_EQ(sample_coloring(6, 0, 0, rng).uncolored_count(), 15);
  std::vector<int> red(15, 0), green(15, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    ColoredPosition p = sample_coloring(6, 5, 4, rng);
    ASSERT_EQ(p.red_count(), 5);
    ASSERT_EQ(p.green_count(), 4);
    for (int e = 0; e < 15; ++e) {
      red[e] += p.color(e) == Color::kRed;
      green[e] += p.color(e) == Color::kGreen;
    }
  }
  auto chi2 = [&](const std::vector<int>& h, double per_edge) {
    double s = 0;
    for (int x : h) s += (x - per_edge) * (x - per_edge) / per_edge;
    return s;
  };
  EXPECT_LT(chi2(red, draws * 5 / 15.0), 36.12);
  EXPECT_LT(chi2(green, draws * 4 / 15.0), 36.12);
}

TEST(Sampling, MonoFreeAgreesWithSubgraphSearch) {
  Rng rng(53);
  auto k4 = clique_graph(4);
  for (int i = 0; i < 10000; ++i) {
    int r = 40 + static_cast<int>(rng() % 37);
    ColoredPosition p = sample_coloring(18, r, r - static_cast<int>(rng() % 2), rng);
    std::vector<int> d(p.digits().begin(), p.digits().end());
    int want = oracle::has_clique(18, d, 1, 4) || oracle::has_clique(18, d, 2, 4) ? 0 : 1;
    ASSERT_EQ(contains_mono(p, Color::kRed, k4) || contains_mono(p, Color::kGreen, k4), want == 0);
    ASSERT_EQ(mono_free(p, 4), want);
  }
  EXPECT_EQ(mono_free(ColoredPosition(complete_board(6)), 3), 1);
  ColoredPosition red_k4(complete_board(6));
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) red_k4.set_color(red_k4.board().edge_index(u, v), Color::kRed);
  EXPECT_EQ(mono_free(red_k4, 4), 0);
}

TEST(Estimate, ExactWhenTargetTooLarge) {
  Rng rng(54);
  EstimateReport l1 = estimate_L1(6, 7, 20, rng);
  EXPECT_EQ(l1.estimate, mpq_class(total_legal_positions(6)));
  EXPECT_DOUBLE_EQ(l1.std_error, 0.0);
  EstimateReport l2 = estimate_L2(6, 7, default_l2_schedule, rng);
  EXPECT_EQ(l2.estimate, mpq_class(total_legal_positions(6)));
  EXPECT_DOUBLE_EQ(l2.ci_low, l2.ci_high);
}

TEST(Estimate, CiShrinksWithSamples) {
  Rng a(55), b(55);
  EstimateReport small = estimate_L1(6, 3, 100, a);
  EstimateReport large = estimate_L1(6, 3, 1600, b);
  EXPECT_LT(large.ci_high - large.ci_low, small.ci_high - small.ci_low);
}

TEST(Estimate, DeterministicForSeedAndThreads) {
  Rng a(56), b(56);
  EstimateOptions two;
  two.threads = 2;
  EXPECT_EQ(estimate_L1(6, 3, 200, a).estimate, estimate_L1(6, 3, 200, b, two).estimate);
  Rng c(57), d(57);
  auto sched = [](int, int) -> uint64_t { return 50; };
  EXPECT_EQ(estimate_L2(6, 3, sched, c).estimate, estimate_L2(6, 3, sched, d, two).estimate);
}

TEST(Estimate, L1CoversExact) {
  const double exact = static_cast<double>(exact_mono_free_classes(6, 3));
  Rng rng(58);
  int covered = 0;
  for (int i = 0; i < 30; ++i) {
    EstimateReport r = estimate_L1(6, 3, 1000, rng);
    covered += r.ci_low <= exact && exact <= r.ci_high;
  }
  EXPECT_GE(covered, 27);
}

// Mean of 1000 independent runs within 1% of the exact count.
TEST(Estimate, L1Unbiased) {
  const double exact = static_cast<double>(exact_mono_free_classes(6, 3));
  Rng rng(59);
  double sum = 0;
  for (int i = 0; i < 1000; ++i) sum += estimate_L1(6, 3, 200, rng).estimate_double();
  EXPECT_NEAR(sum / 1000, exact, 0.01 * exact);
}

TEST(Estimate, L2Unbiased) {
  const double exact = static_cast<double>(exact_mono_free_classes(6, 3));
  Rng rng(60);
  double sum = 0;
  for (int i = 0; i < 1000; ++i) sum += estimate_L2(6, 3, default_l2_schedule, rng).estimate_double();
  EXPECT_NEAR(sum / 1000, exact, 0.01 * exact);
}

TEST(Estimate, ScheduleShape) {
  EXPECT_EQ(default_l2_schedule(0, 153), 100u);
  EXPECT_EQ(default_l2_schedule(39, 153), 100u);
  EXPECT_EQ(default_l2_schedule(153, 153), 50000u);
  EXPECT_GT(default_l2_schedule(100, 153), 100u);
  EXPECT_LT(default_l2_schedule(100, 153), 50000u);
}
