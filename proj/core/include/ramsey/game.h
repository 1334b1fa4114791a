#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramsey/graph.h"

namespace ramsey {

// Numeric ids are stored in table files.
enum class GameVariant : uint8_t {
  kAvoid = 0,
  kAvoidMisere = 1,
  kAvoidPlus = 2,
  kAchieve = 3,
  kAchievePrime = 4,
  kAchieveWeak = 5,
  kAsymmetricAvoid = 6,
};

const char* variant_name(GameVariant v);
GameVariant parse_variant(std::string_view name);
// Avoid, AvoidPlus and AsymmetricAvoid: completing your own target is illegal
// and a player without a legal move loses.
bool is_normal_play_avoid(GameVariant v);
bool is_achievement(GameVariant v);

struct GameSpec {
  GameVariant variant = GameVariant::kAvoid;
  std::shared_ptr<const Graph> board;
  Graph target_red;
  Graph target_green;  // equal to target_red except for AsymmetricAvoid
  std::vector<int> precolor_red;
  std::vector<int> precolor_green;

  const Graph& target(Player p) const { return p == Player::kRed ? target_red : target_green; }
  ColoredPosition initial_position() const;
  // Throws std::invalid_argument describing the first violated rule.
  void validate() const;
  uint64_t fingerprint() const;
};

GameSpec make_spec(GameVariant v, int n, const Graph& target);
// Sim board and target (K6, K3) under the given variant.
GameSpec sim_spec(GameVariant v = GameVariant::kAvoid);

// JSON text with fields variant, n, edges (omitted for complete boards),
// target, target_green (asymmetric only), precolor_red, precolor_green.
std::string spec_to_json(const GameSpec& spec);
GameSpec spec_from_json(std::string_view text);
// Accepts "k<k>", "bowtie", "topus<m>".
Graph parse_target_name(std::string_view name);

enum class Status : uint8_t { kOngoing, kRedWin, kGreenWin, kTie };
enum class EndReason : uint8_t { kNone, kCompleted, kNoMoves, kBoardFull };

const char* status_name(Status s);
inline Status win_for(Player p) { return p == Player::kRed ? Status::kRedWin : Status::kGreenWin; }

struct GameState {
  ColoredPosition position;
  Player to_move = Player::kRed;
  Status status = Status::kOngoing;
  EndReason reason = EndReason::kNone;
  int move_number = 0;  // moves made so far

  bool terminal() const { return status != Status::kOngoing; }
};

// Sorted edge indices. A single edge except in AvoidPlus.
struct Move {
  std::vector<int> edges;
  friend bool operator==(const Move& a, const Move& b) { return a.edges == b.edges; }
};

// Decides whether target copies appear. The default uses subgraph search;
// reduction outputs use precomputed copies.
class TargetDetector {
 public:
  virtual ~TargetDetector() = default;
  virtual bool completes(const ColoredPosition& p, int edge, Player who) const = 0;
  virtual bool contains(const ColoredPosition& p, Player who) const = 0;
};

std::shared_ptr<const TargetDetector> subgraph_detector(const GameSpec& spec);
// Enumerates every copy of each player's target among edges that player
// could own. Suited to large sparse boards.
std::shared_ptr<const TargetDetector> incidence_detector(const GameSpec& spec);

class GameEngine;

// Lazy enumeration of AvoidPlus moves: every nonempty set of uncolored edges
// whose coloring does not create the mover's target. Depth-first with
// pruning; monotonicity makes pruning exact.
class SubsetMoveStream {
 public:
  SubsetMoveStream(const GameEngine& engine, const GameState& state);
  bool next(Move& out);

 private:
  const TargetDetector& detector_;
  Player mover_;
  ColoredPosition pos_;
  std::vector<int> free_;
  std::vector<int> chosen_;
  int cursor_ = 0;
};

class GameEngine {
 public:
  explicit GameEngine(GameSpec spec, std::shared_ptr<const TargetDetector> detector = nullptr);

  const GameSpec& spec() const { return spec_; }
  const TargetDetector& detector() const { return *detector_; }

  GameState initial_state() const;

  // Whether coloring edge for player who creates that player's target.
  bool completes(const ColoredPosition& p, int edge, Player who) const {
    return detector_->completes(p, edge, who);
  }
  bool has_single_edge_move(const ColoredPosition& p, Player who) const;

  // Single-edge variants: one move per legal edge. AvoidPlus: every subset
  // move, materialized; use subset_moves to stream. A state lost for lack of
  // moves yields an empty list; other terminal states throw.
  std::vector<Move> legal_moves(const GameState& s) const;
  // Legal single-edge moves even for AvoidPlus.
  std::vector<int> legal_edges(const GameState& s) const;
  SubsetMoveStream subset_moves(const GameState& s) const { return SubsetMoveStream(*this, s); }

  // Empty string when legal, else the reason.
  std::string check_move(const GameState& s, const Move& m) const;
  GameState apply_move(const GameState& s, const Move& m) const;
  // Applies without re-checking legality; the caller vouches for it.
  GameState apply_unchecked(const GameState& s, const Move& m) const;

 private:
  GameSpec spec_;
  std::shared_ptr<const TargetDetector> detector_;
};

// Whether the precolored board arrows the target, so that Avoid and its
// misere variant share their winner.
bool misere_equiv_check(const GameSpec& spec, int max_uncolored = 24);

}  // namespace ramsey
