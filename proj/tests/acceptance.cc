// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "oracles.h"
#include "ramsey/adaptive.h"
#include "ramsey/canonical.h"
#include "ramsey/estimate.h"
#include "ramsey/polya.h"
#include "ramsey/reductions.h"
#include "ramsey/solver.h"
#include "ramsey/table_io.h"
#include "ramsey/witness.h"

using namespace ramsey;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail, double seconds) {
  std::printf("%s criterion %d: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void run(int id, F body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail += std::string(" exception: ") + e.what();
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, ok, detail, s);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<PositiveFormula> all_formulas(FormulaKind kind, int n, int max_m) {
  std::vector<PositiveFormula> out;
  const int subsets = (1 << n) - 1;
  for (uint32_t pick = 1; pick < (1u << subsets); ++pick) {
    if (__builtin_popcount(pick) > max_m) continue;
    std::vector<std::vector<int>> clauses;
    int cover = 0;
    for (int s = 0; s < subsets; ++s) {
      if (!(pick >> s & 1)) continue;
      int mask = s + 1;
      cover |= mask;
      std::vector<int> c;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) c.push_back(i + 1);
      clauses.push_back(c);
    }
    if (cover == subsets) out.push_back(make_formula(kind, n, clauses));
  }
  return out;
}

oracle::Variant to_oracle(GameVariant v) {
  switch (v) {
    case GameVariant::kAvoid: return oracle::kAvoid;
    case GameVariant::kAvoidMisere: return oracle::kMisere;
    case GameVariant::kAvoidPlus: return oracle::kPlus;
    case GameVariant::kAchieve: return oracle::kAchieve;
    case GameVariant::kAchievePrime: return oracle::kAchievePrime;
    case GameVariant::kAchieveWeak: return oracle::kAchieveWeak;
    case GameVariant::kAsymmetricAvoid: return oracle::kAsym;
  }
  return oracle::kAvoid;
}

ColoredPosition from_digits(int n, const std::vector<int>& d) {
  ColoredPosition p(complete_board(n));
  for (size_t e = 0; e < d.size(); ++e) p.set_color(static_cast<int>(e), static_cast<Color>(d[e]));
  return p;
}

// Exact count of classes with r = g or r = g + 1 and no monochromatic K_k.
double exact_mono_free(int n, int k) {
  uint64_t count = 0;
  oracle::for_each_orbit_rep(n, [&](uint64_t, const std::vector<int>& d) {
    int r = static_cast<int>(std::count(d.begin(), d.end(), 1));
    int g = static_cast<int>(std::count(d.begin(), d.end(), 2));
    if (r != g && r != g + 1) return;
    if (oracle::has_clique(n, d, 1, k) || oracle::has_clique(n, d, 2, k)) return;
    ++count;
  });
  return static_cast<double>(count);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

}  // namespace

int main() {
  const std::string src = RAMSEY_SOURCE_DIR;

  GameEngine sim(sim_spec());
  StrategyTable sim_table = solve(sim);

  run(1, [&](std::string& d) {
    const SolveStats& st = sim_table.stats();
    CanonicalOptions swap;
    swap.swap_colors = true;
    PositionCensus q = census_positions(sim, swap);
    d = "Sim census " + std::to_string(st.nonisomorphic_with_terminal) + " with terminal / " +
        std::to_string(st.nonisomorphic_stored) + " stored, want 3728 / 2309; swap quotient gives " +
        std::to_string(q.with_terminal) + " / " + std::to_string(q.stored);
    return st.nonisomorphic_with_terminal == 3728 && st.nonisomorphic_stored == 2309;
  });

  run(2, [&](std::string& d) {
    StrategyTable mis = solve(GameSpec(sim_spec(GameVariant::kAvoidMisere)));
    d = std::string("Sim root ") + value_name(sim_table.root_value()) + ", misere root " + value_name(mis.root_value());
    return sim_table.root_value() == GameValue::kRedLoss && mis.root_value() == GameValue::kRedLoss;
  });

  run(3, [&](std::string& d) {
    StrategyTable plus = solve(GameSpec(sim_spec(GameVariant::kAvoidPlus)));
    d = "Sim+ " + std::to_string(plus.size()) + " entries (want 13158), root " + value_name(plus.root_value());
    return plus.size() == 13158 && plus.root_value() == GameValue::kRedLoss;
  });

  run(4, [&](std::string& d) {
    int e = earliest_forced_win(sim_table);
    d = "earliest forced win at move " + std::to_string(e);
    return e == 15;
  });

  run(5, [&](std::string& d) {
    mpz_class total = total_legal_positions(18);
    mpz_class stratum = count_colorings(18, 77, 76);
    d = "total(18) = " + total.get_str() + ", count(18,77,76) = " + stratum.get_str();
    return total == mpz_class("122817954504260150325481627994395745196940238595512818831") &&
           stratum == mpz_class("114722035311851620271616102401");
  });

  run(6, [&](std::string& d) {
    int checked = 0, bad = 0;
    for (int n = 1; n <= 6; ++n) {
      auto counts = oracle::orbit_counts(n);
      const int E = n * (n - 1) / 2;
      for (int r = 0; r <= E; ++r)
        for (int g = 0; r + g <= E; ++g) {
          auto it = counts.find({r, g});
          uint64_t want = it == counts.end() ? 0 : it->second;
          bad += count_colorings(n, r, g) != mpz_class(std::to_string(want));
          ++checked;
        }
    }
    d = std::to_string(checked) + " (n, r, g) cells, " + std::to_string(bad) + " mismatches";
    return bad == 0;
  });

  run(7, [&](std::string& d) {
    const double exact = exact_mono_free(6, 3);
    const int runs = 100;
    Rng rng(20240707);
    int cover1 = 0, cover2 = 0;
    double sum1 = 0, sum2 = 0;
    for (int i = 0; i < runs; ++i) {
      EstimateReport a = estimate_L1(6, 3, 1000, rng);
      cover1 += a.ci_low <= exact && exact <= a.ci_high;
      sum1 += a.estimate_double();
      EstimateReport b = estimate_L2(6, 3, default_l2_schedule, rng);
      cover2 += b.ci_low <= exact && exact <= b.ci_high;
      sum2 += b.estimate_double();
    }
    double mean1 = sum1 / runs, mean2 = sum2 / runs;
    bool calib = cover1 >= 95 && cover2 >= 95 && std::abs(mean1 - exact) <= 0.01 * exact &&
                 std::abs(mean2 - exact) <= 0.01 * exact;
    Rng big(18);
    EstimateReport s1 = estimate_L1(18, 4, 100, big);
    EstimateReport s2 = estimate_L2(18, 4, default_l2_schedule, big);
    bool smoke = s1.estimate_double() >= 1e52 && s1.estimate_double() <= 1e56 && s2.estimate_double() >= 1e52 &&
                 s2.estimate_double() <= 1e56;
    d = fmt("n=6 exact %.0f; L1 cover %.0f/100 mean %.1f; ", exact, cover1, mean1) +
        fmt("L2 cover %.0f/100 mean %.1f; n=18 k=4 L1 %.3g L2 %.3g", cover2, mean2, s1.estimate_double(),
            s2.estimate_double());
    return calib && smoke;
  });

  run(8, [&](std::string& d) {
    int cases = 0, kept = 0;
    for (int n = 1; n <= 3; ++n) {
      for (const PositiveFormula& f : all_formulas(FormulaKind::kCnf, n, 2)) {
        kept += verify_reduction(f, ReductionKind::kAvoid).preserved;
        ++cases;
      }
      for (const PositiveFormula& f : all_formulas(FormulaKind::kDnf, n, 7))
        for (ReductionKind k : {ReductionKind::kAchieveWeak, ReductionKind::kAchieve}) {
          kept += verify_reduction(f, k).preserved;
          ++cases;
        }
    }
    const std::string dir = src + "/data/formulas/";
    ReductionCheck first = verify_reduction(parse_formula(slurp(dir + "cnf-first.txt")), ReductionKind::kAvoid);
    ReductionCheck second = verify_reduction(parse_formula(slurp(dir + "cnf-second.txt")), ReductionKind::kAvoid);
    ReductionCheck seven =
        verify_reduction(parse_formula(slurp(dir + "dnf-seven.txt")), ReductionKind::kAchieveWeak);
    bool examples = first.preserved && first.formula_winner == FormulaWinner::kI && second.preserved &&
                    second.formula_winner == FormulaWinner::kII && seven.preserved &&
                    seven.formula_winner == FormulaWinner::kII;
    d = std::to_string(kept) + "/" + std::to_string(cases) + " sweep cases preserved; examples " +
        winner_name(first.formula_winner) + "/" + value_name(first.graph_value) + ", " +
        winner_name(second.formula_winner) + "/" + value_name(second.graph_value) + ", " +
        winner_name(seven.formula_winner) + "/" + value_name(seven.graph_value);
    return kept == cases && examples;
  });

  run(9, [&](std::string& d) {
    ColoredPosition k17 = load_witness(src + "/data/k17-witness.txt");
    WitnessReport w = verify_witness(k17, 4);
    bool degrees = true;
    for (int v = 0; v < 17; ++v) degrees &= w.red_degree[v] == 8 && w.green_degree[v] == 8;
    ColoredPosition k18 = extend_by_duplicate(k17, 0);
    WitnessReport x = verify_witness(k18, 4);
    d = "K17 mono-free " + std::to_string(w.mono_free) + " regular " + std::to_string(degrees) + "; K18 (" +
        std::to_string(k18.red_count()) + "," + std::to_string(k18.green_count()) + ") uncolored " +
        std::to_string(k18.uncolored_count()) + " mono-free " + std::to_string(x.mono_free);
    return w.passes(true) && degrees && k18.red_count() == 76 && k18.green_count() == 76 &&
           k18.uncolored_count() == 1 && x.mono_free;
  });

  run(10, [&](std::string& d) {
    std::mt19937_64 rng(10);
    int bad = 0;
    // Canonical invariance under relabeling.
    for (int t = 0; t < 400; ++t) {
      int n = 5 + t % 5;
      ColoredPosition p(complete_board(n));
      for (int e = 0; e < p.edge_count(); ++e) p.set_color(e, static_cast<Color>(rng() % 3));
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      bad += canonicalize(p).code != canonicalize(permute_position(p, perm)).code;
    }
    int invariance = bad;
    // Orbit sizes over K5 sum to 3^10.
    mpz_class sum = 0;
    oracle::for_each_orbit_rep(5, [&](uint64_t, const std::vector<int>& dg) {
      sum += factorial(5) / automorphism_group_order(from_digits(5, dg));
    });
    bool orbit_sum = sum == 59049;
    // Solver against plain minimax for n <= 5.
    int solver_bad = 0;
    for (GameVariant v : {GameVariant::kAvoid, GameVariant::kAvoidMisere, GameVariant::kAvoidPlus,
                          GameVariant::kAchieve, GameVariant::kAchievePrime, GameVariant::kAchieveWeak,
                          GameVariant::kAsymmetricAvoid})
      for (int n = 3; n <= 5; ++n) {
        int kg = v == GameVariant::kAsymmetricAvoid ? 4 : 3;
        GameSpec spec = make_spec(v, n, clique_graph(3));
        spec.target_green = clique_graph(kg);
        oracle::GameOracle o(n, to_oracle(v), 3, kg);
        solver_bad += static_cast<int>(solve(spec).root_value()) != o.solve();
      }
    // Learning steps stay in range and skip zero.
    int learn_bad = 0;
    for (int i = 0; i < 100000; ++i) {
      int v = static_cast<int>(rng() % 256) - 128;
      if (v == 0) continue;
      int r = learning_step(v, static_cast<int>(rng() % 601) - 300);
      learn_bad += r == 0 || r < kLearnMin || r > kLearnMax;
    }
    // File round trips.
    std::ostringstream a, b;
    write_table_file(a, to_table_file(sim_table));
    std::istringstream in(a.str());
    write_table_file(b, read_table_file(in));
    LearningTable lt(sim_spec());
    for (int i = 0; i < 100; ++i) lt.set(rng() % 100000, 1 + static_cast<int>(rng() % 127));
    std::string ls = serialize_learning_table(lt);
    bool files = a.str() == b.str() && serialize_learning_table(parse_learning_table(ls)) == ls;
    d = "relabel mismatches " + std::to_string(invariance) + ", orbit sum " + sum.get_str() +
        ", solver mismatches " + std::to_string(solver_bad) + ", learning violations " + std::to_string(learn_bad) +
        ", round trips " + (files ? "ok" : "differ");
    return invariance == 0 && orbit_sum && solver_bad == 0 && learn_bad == 0 && files;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
