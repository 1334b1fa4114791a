#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "oracles.h"
#include "ramsey/canonical.h"
#include "ramsey/solver.h"
#include "ramsey/table_io.h"

using namespace ramsey;

namespace {

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

const std::vector<GameVariant> kAllVariants = {
    GameVariant::kAvoid,        GameVariant::kAvoidMisere, GameVariant::kAvoidPlus,      GameVariant::kAchieve,
    GameVariant::kAchievePrime, GameVariant::kAchieveWeak, GameVariant::kAsymmetricAvoid};

GameSpec spec_for(GameVariant v, int n, int kr, int kg) {
  GameSpec s = make_spec(v, n, clique_graph(kr));
  s.target_green = clique_graph(kg);
  return s;
}

// Recomputes every stored entry from its children.
void audit_table(const GameEngine& eng, const StrategyTable& table) {
  const GameSpec& spec = eng.spec();
  const int fixed = static_cast<int>(spec.precolor_red.size() + spec.precolor_green.size());
  for (const auto& [key, value] : table.entries()) {
    GameState s;
    uint64_t code = key;
    if (table.keyer().side_in_key()) {
      s.to_move = static_cast<Player>(key & 1);
      code >>= 1;
    }
    ASSERT_TRUE(table.keyer().canonical());
    s.position = decode_position64(code, spec.board);
    int made = s.position.red_count() + s.position.green_count() - fixed;
    if (!table.keyer().side_in_key()) s.to_move = made % 2 == 0 ? Player::kRed : Player::kGreen;
    int best = -1;
    GameValue want = win_value(opponent(s.to_move));
    for (const Move& m : eng.legal_moves(s)) {
      GameValue child = value_after(eng, s, m, table);
      if (preference(child, s.to_move) > best) {
        best = preference(child, s.to_move);
        want = child;
      }
    }
    ASSERT_EQ(value, want) << format_position(s.position);
  }
}

struct OracleCensus {
  uint64_t with_terminal = 0;
  uint64_t stored = 0;
};

// Reachable labeled positions, folded into orbits by exhaustive minimum.
OracleCensus raw_census(int n, GameVariant v, int k) {
  const int E = oracle::edges_of(n);
  const bool normal = v == GameVariant::kAvoid;
  std::set<uint64_t> seen_raw, stored, terminal;
  std::vector<std::vector<int>> stack{std::vector<int>(E, 0)};
  seen_raw.insert(0);
  stored.insert(0);
  while (!stack.empty()) {
    std::vector<int> p = stack.back();
    stack.pop_back();
    int made = static_cast<int>(E - std::count(p.begin(), p.end(), 0));
    int mover = made % 2;
    for (int e = 0; e < E; ++e) {
      if (p[e] != 0) continue;
      std::vector<int> q = p;
      q[e] = mover + 1;
      bool comp = oracle::has_clique(n, q, mover + 1, k);
      bool full = made + 1 == E;
      uint64_t key = oracle::min_code(n, q);
      if ((comp && !(v == GameVariant::kAchieveWeak && mover == 1)) || (full && !normal)) {
        terminal.insert(key);
      } else {
        stored.insert(key);
        if (seen_raw.insert(oracle::encode(q)).second) stack.push_back(q);
      }
    }
  }
  return {stored.size() + terminal.size(), stored.size()};
}

}  // namespace

TEST(Solver, OracleEquivalenceAllVariants) {
  for (int n = 3; n <= 5; ++n) {
    for (GameVariant v : kAllVariants) {
      std::vector<std::pair<int, int>> targets = {{3, 3}};
      if (v == GameVariant::kAsymmetricAvoid) targets = {{3, 4}, {4, 3}, {3, 2}};
      for (auto [kr, kg] : targets) {
        GameSpec spec = spec_for(v, n, kr, kg);
        oracle::GameOracle o(n, to_oracle(v), kr, kg);
        int want = o.solve();
        StrategyTable canon = solve(spec);
        SolveOptions raw;
        raw.canonical = false;
        StrategyTable flat = solve(spec, raw);
        EXPECT_EQ(static_cast<int>(canon.root_value()), want) << variant_name(v) << " n=" << n << " " << kr << kg;
        EXPECT_EQ(static_cast<int>(flat.root_value()), want) << variant_name(v) << " n=" << n;
        EXPECT_LE(canon.stats().nonisomorphic_stored, canon.stats().nonisomorphic_with_terminal);
      }
    }
  }
}

TEST(Solver, SmallExamples) {
  StrategyTable k3 = solve(make_spec(GameVariant::kAvoid, 3, clique_graph(3)));
  EXPECT_EQ(k3.root_value(), GameValue::kRedWin);
  EXPECT_EQ(earliest_forced_win(k3), 3);
  StrategyTable k2 = solve(make_spec(GameVariant::kAvoid, 3, clique_graph(2)));
  EXPECT_EQ(k2.root_value(), GameValue::kRedLoss);
  EXPECT_EQ(earliest_forced_win(k2), 1);
}

TEST(Solver, CensusMatchesRawEnumeration) {
  for (int n = 3; n <= 5; ++n)
    for (GameVariant v : {GameVariant::kAvoid, GameVariant::kAvoidMisere, GameVariant::kAchieve,
                          GameVariant::kAchieveWeak}) {
      GameSpec spec = make_spec(v, n, clique_graph(3));
      OracleCensus want = raw_census(n, v, 3);
      PositionCensus got = census_positions(GameEngine(spec), {});
      EXPECT_EQ(got.with_terminal, want.with_terminal) << variant_name(v) << n;
      EXPECT_EQ(got.stored, want.stored) << variant_name(v) << n;
      StrategyTable t = solve(spec);
      EXPECT_EQ(t.stats().nonisomorphic_with_terminal, want.with_terminal) << variant_name(v) << n;
    }
}

TEST(Solver, SimCensusAgreesWithBreadthFirst) {
  GameEngine eng(sim_spec());
  StrategyTable t = solve(eng);
  PositionCensus c = census_positions(eng, {});
  EXPECT_EQ(t.stats().nonisomorphic_with_terminal, c.with_terminal);
  EXPECT_EQ(t.size(), t.stats().nonisomorphic_stored);
}

TEST(Solver, FullTableAudit) {
  std::vector<GameSpec> specs = {sim_spec(), sim_spec(GameVariant::kAvoidMisere),
                                 make_spec(GameVariant::kAchieve, 5, clique_graph(3)),
                                 make_spec(GameVariant::kAchievePrime, 5, clique_graph(3)),
                                 make_spec(GameVariant::kAchieveWeak, 5, clique_graph(3)),
                                 make_spec(GameVariant::kAvoidPlus, 5, clique_graph(3)),
                                 spec_for(GameVariant::kAsymmetricAvoid, 6, 3, 4)};
  for (const GameSpec& spec : specs) {
    GameEngine eng(spec);
    StrategyTable t = solve(eng);
    audit_table(eng, t);
  }
}

TEST(Solver, SymmetrySoundness) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    int n = trial % 2 ? 5 : 6;
    GameSpec spec = make_spec(trial < 3 ? GameVariant::kAvoid : GameVariant::kAchieve, n, clique_graph(3));
    std::vector<int> edges(spec.board->edge_count());
    std::iota(edges.begin(), edges.end(), 0);
    std::shuffle(edges.begin(), edges.end(), rng);
    spec.precolor_red = {edges[0]};
    spec.precolor_green = {edges[1], edges[2]};
    std::sort(spec.precolor_green.begin(), spec.precolor_green.end());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    GameSpec moved = spec;
    auto map_edges = [&](const std::vector<int>& in) {
      std::vector<int> out;
      for (int e : in) {
        const Edge& ed = spec.board->edge(e);
        out.push_back(spec.board->edge_index(perm[ed.u], perm[ed.v]));
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    moved.precolor_red = map_edges(spec.precolor_red);
    moved.precolor_green = map_edges(spec.precolor_green);
    StrategyTable a = solve(spec), b = solve(moved);
    EXPECT_EQ(a.content_fingerprint(), b.content_fingerprint());
    EXPECT_EQ(a.root_value(), b.root_value());
  }
}

TEST(Solver, BestMoves) {
  GameEngine eng(sim_spec());
  StrategyTable t = solve(eng);
  GameState s = eng.initial_state();
  auto all = best_moves(eng, s, t);
  EXPECT_EQ(all.size(), 15u);
  GameState g = eng.apply_move(s, Move{{0}});
  ASSERT_EQ(t.at(g), GameValue::kRedLoss);
  auto replies = best_moves(eng, g, t);
  ASSERT_FALSE(replies.empty());
  for (const Move& m : replies) EXPECT_EQ(value_after(eng, g, m, t), GameValue::kRedLoss);

  GameEngine ach(make_spec(GameVariant::kAchieve, 6, clique_graph(3)));
  StrategyTable at = solve(ach);
  EXPECT_EQ(at.root_value(), GameValue::kRedWin);
  GameState f = ach.initial_state();
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {3, 4}, {1, 2}, {4, 5}})
    f = ach.apply_move(f, Move{{ach.spec().board->edge_index(u, v)}});
  auto wins = best_moves(ach, f, at);
  Move close{{ach.spec().board->edge_index(0, 2)}};
  EXPECT_NE(std::find(wins.begin(), wins.end(), close), wins.end());
}

TEST(Solver, BudgetExceededEmitsNothing) {
  SolveOptions tiny;
  tiny.max_entries = 10;
  EXPECT_THROW(solve(sim_spec(), tiny), BudgetExceeded);
}

TEST(Bounds, Examples) {
  EXPECT_EQ(bounds_predicate(16, 2), BoundsVerdict::kFirstWin);
  EXPECT_EQ(bounds_predicate(5, 4), BoundsVerdict::kTie);
  EXPECT_EQ(bounds_predicate(6, 3), BoundsVerdict::kUnknown);
  for (int n = 2; n <= 64; ++n)
    for (int k = 2; k <= n; ++k) EXPECT_NO_THROW(bounds_predicate(n, k));
}

TEST(TableIo, RoundTripsByteIdentical) {
  for (GameSpec spec : {sim_spec(), make_spec(GameVariant::kAvoidPlus, 5, clique_graph(3))}) {
    StrategyTable t = solve(spec);
    std::ostringstream a;
    write_table_file(a, to_table_file(t));
    std::istringstream in(a.str());
    TableFile f = read_table_file(in);
    std::ostringstream b;
    write_table_file(b, f);
    EXPECT_EQ(a.str(), b.str());
    StrategyTable back = from_table_file(f, spec);
    EXPECT_EQ(back.entries(), t.entries());
    EXPECT_EQ(back.root_value(), t.root_value());
    EXPECT_EQ(a.str().substr(0, 5), "GRST1");
  }
  auto dir = std::filesystem::temp_directory_path() / "ramsey_table_test";
  std::filesystem::create_directories(dir);
  StrategyTable t = solve(sim_spec());
  std::string path = (dir / "sim.grst").string();
  save_strategy_table(path, t);
  StrategyTable u = load_strategy_table(path, sim_spec());
  EXPECT_EQ(u.content_fingerprint(), t.content_fingerprint());
  EXPECT_THROW(load_strategy_table(path, make_spec(GameVariant::kAvoid, 5, clique_graph(3))), std::exception);
  std::filesystem::remove_all(dir);
}

TEST(TableIo, WideKeys) {
  TableFile f;
  f.vertex_count = 18;
  f.entries.push_back({mpz_class(5), 0});
  f.entries.push_back({mpz_class("123456789012345678901234567890"), 1});
  std::ostringstream a;
  write_table_file(a, f);
  std::istringstream in(a.str());
  TableFile g = read_table_file(in);
  EXPECT_TRUE(g.flags & kFlagWideKeys);
  ASSERT_EQ(g.entries.size(), 2u);
  EXPECT_EQ(g.entries[1].first, f.entries[1].first);
  std::ostringstream b;
  write_table_file(b, g);
  EXPECT_EQ(a.str(), b.str());
}

TEST(TableIo, RejectsCorruptFiles) {
  StrategyTable t = solve(make_spec(GameVariant::kAvoid, 4, clique_graph(3)));
  std::ostringstream a;
  write_table_file(a, to_table_file(t));
  std::string bytes = a.str();
  std::string bad_magic = bytes;
  bad_magic[0] = 'X';
  std::istringstream in1(bad_magic);
  EXPECT_THROW(read_table_file(in1), TableFormatError);
  std::istringstream in2(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(read_table_file(in2), TableFormatError);
}
