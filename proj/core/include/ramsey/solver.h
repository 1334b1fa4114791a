#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ramsey/canonical.h"
#include "ramsey/game.h"

namespace ramsey {

// Stored from Red's point of view. Numeric ids are the table file values.
enum class GameValue : uint8_t { kRedWin = 0, kRedLoss = 1, kTie = 2 };

const char* value_name(GameValue v);
// 2 win, 1 tie, 0 loss for the given player.
int preference(GameValue v, Player p);
GameValue value_of_status(Status s);
GameValue win_value(Player p);

// Maps (position, side to move) to a 64-bit table key. Complete boards use
// the canonical code; other boards use the raw base-3 code over the edges
// not fixed by the precoloring. AvoidPlus keys carry the side in bit 0.
class PositionKeyer {
 public:
  PositionKeyer(const GameSpec& spec, bool canonical);

  uint64_t key(const ColoredPosition& p, Player to_move) const;
  bool canonical() const { return canonical_; }
  bool side_in_key() const { return side_in_key_; }

 private:
  bool canonical_ = false;
  bool side_in_key_ = false;
  std::vector<int> free_;
};

struct SolveStats {
  // Distinct keys reached, plus distinct terminal positions created by a
  // completing or board-filling single-edge move.
  uint64_t nonisomorphic_with_terminal = 0;
  // Entries stored: every reachable position where a player is to move and
  // no deciding target exists, including positions with no legal move.
  uint64_t nonisomorphic_stored = 0;
  // Ply at which the loser's fate is sealed under optimal length play; none
  // when the root is a tie.
  std::optional<int> earliest_forced_win;
};

class StrategyTable {
 public:
  StrategyTable(const GameSpec& spec, bool canonical);

  std::optional<GameValue> find(uint64_t key) const;
  GameValue at(uint64_t key) const;  // throws std::out_of_range
  std::optional<GameValue> find(const GameState& s) const;
  GameValue at(const GameState& s) const;

  size_t size() const { return entries_.size(); }
  // Sorted by key.
  const std::vector<std::pair<uint64_t, GameValue>>& entries() const { return entries_; }
  void set_entries(std::vector<std::pair<uint64_t, GameValue>> sorted_entries);

  const PositionKeyer& keyer() const { return keyer_; }
  uint64_t spec_fingerprint() const { return fingerprint_; }
  int vertex_count() const { return vertex_count_; }
  GameVariant variant() const { return variant_; }
  GameValue root_value() const { return root_; }
  void set_root_value(GameValue v) { root_ = v; }
  SolveStats& stats() { return stats_; }
  const SolveStats& stats() const { return stats_; }
  // FNV-1a over the sorted entries.
  uint64_t content_fingerprint() const;

 private:
  PositionKeyer keyer_;
  uint64_t fingerprint_ = 0;
  int vertex_count_ = 0;
  GameVariant variant_ = GameVariant::kAvoid;
  GameValue root_ = GameValue::kTie;
  std::vector<std::pair<uint64_t, GameValue>> entries_;
  SolveStats stats_;
};

struct SolveOptions {
  // Memoize on canonical keys where the board allows it.
  bool canonical = true;
  uint64_t max_entries = 200'000'000;
};

// Memoized negamax over the whole reachable state space. Throws
// BudgetExceeded without producing a table when max_entries is passed.
StrategyTable solve(const GameEngine& engine, const SolveOptions& opt = {});
StrategyTable solve(const GameSpec& spec, const SolveOptions& opt = {});

// Value of the position after the move: the terminal status or the stored
// entry.
GameValue value_after(const GameEngine& engine, const GameState& s, const Move& m,
                      const StrategyTable& table);

// Every legal move whose child value is optimal for the mover.
std::vector<Move> best_moves(const GameEngine& engine, const GameState& s,
                             const StrategyTable& table);

int earliest_forced_win(const StrategyTable& table);

struct PositionCensus {
  uint64_t with_terminal = 0;
  uint64_t stored = 0;
};
// Breadth-first census of reachable classes under arbitrary canonical
// options (for example with the color exchange quotient). Single-edge
// variants on complete boards.
PositionCensus census_positions(const GameEngine& engine, const CanonicalOptions& opt);

enum class BoundsVerdict { kFirstWin, kTie, kUnknown };
const char* bounds_name(BoundsVerdict v);
// FirstWin when k <= log2(n)/2, Tie when 2^(C(k,2)-1) > C(n,k). Throws
// std::logic_error if both hold.
BoundsVerdict bounds_predicate(int n, int k);

}  // namespace ramsey
