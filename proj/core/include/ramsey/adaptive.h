#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ramsey/game.h"
#include "ramsey/solver.h"

namespace ramsey {

using Rng = std::mt19937_64;

constexpr int kLearnInitial = 1;
constexpr int kLearnMin = -128;
constexpr int kLearnMax = 127;

// Clamps value + delta into the byte range; a result of 0 moves one more
// unit in the direction of delta.
int learning_step(int value, int delta);

// Learned desirability of positions reached by engine moves, keyed like the
// strategy table. Absent keys read as 1.
class LearningTable {
 public:
  LearningTable() = default;
  explicit LearningTable(const GameSpec& spec);

  int get(uint64_t key) const;
  // Value must be nonzero and inside the byte range.
  void set(uint64_t key, int value);
  bool contains(uint64_t key) const { return values_.count(key) != 0; }
  size_t size() const { return values_.size(); }
  const std::map<uint64_t, int8_t>& values() const { return values_; }

  uint64_t fingerprint() const { return fingerprint_; }
  int vertex_count() const { return vertex_count_; }
  GameVariant variant() const { return variant_; }
  uint8_t flags() const { return flags_; }
  void set_header(uint64_t fingerprint, int vertex_count, GameVariant variant, uint8_t flags);

 private:
  uint64_t fingerprint_ = 0;
  int vertex_count_ = 0;
  GameVariant variant_ = GameVariant::kAvoid;
  uint8_t flags_ = 0;
  std::map<uint64_t, int8_t> values_;
};

void save_learning_table(const std::string& path, const LearningTable& table);
LearningTable load_learning_table(const std::string& path);
std::string serialize_learning_table(const LearningTable& table);
LearningTable parse_learning_table(const std::string& bytes);

struct SalienceWeights {
  std::vector<double> weight;  // per edge index
  double of(int edge) const { return weight.at(edge); }
  // K6 drawn as a hexagon 0..5: the square on {1,2,4,5} weighs 2, the
  // remaining hexagon sides 1.5, the rest 1. Other boards are uniform.
  static SalienceWeights for_board(const Graph& board);
  static SalienceWeights uniform(const Graph& board);
};

struct ScoreWeights {
  double alpha = 1.0;    // opponent blunder replies one ply ahead
  double beta = 0.25;    // salience of the blunder edges
  double gamma = 1.0;    // learned value
  double epsilon = 0.05;  // floor for the learned term
};

struct GameRecord {
  struct Step {
    uint64_t key = 0;  // key of the state before the move
    Move move;
    Player mover = Player::kRed;
  };
  Player engine = Player::kGreen;
  std::vector<Step> steps;
  Status outcome = Status::kOngoing;
  // The loser ran out of moves rather than completing a target.
  bool forced_loss = false;
};

struct MoveScore {
  Move move;
  GameValue value;
  double score = 0;  // zero for moves outside the sampled set
};

// Child values and scores of every legal move. Winning moves, when present,
// form the candidate set; otherwise the best achievable value's moves are
// scored. AvoidPlus counts single-edge opponent replies only.
std::vector<MoveScore> move_scores(const GameEngine& engine, const GameState& s,
                                   const StrategyTable& strategy, const LearningTable& learn,
                                   const SalienceWeights& salience,
                                   const ScoreWeights& weights = {});

// Throws std::logic_error when the state has no legal move.
Move choose_move(const GameEngine& engine, const GameState& s, const StrategyTable& strategy,
                 const LearningTable& learn, const SalienceWeights& salience, Rng& rng,
                 const ScoreWeights& weights = {});

// Replays the record, then adds factor to each engine-reached non-winning
// position on a forced win and subtracts it on a loss. Other outcomes leave
// the table unchanged. Throws std::invalid_argument on a corrupt record.
LearningTable update_after_game(const GameEngine& engine, const StrategyTable& strategy,
                                const LearningTable& learn, const GameRecord& record,
                                int learning_factor = 4);

// Random vertex relabeling of a complete-board state.
std::pair<std::vector<int>, GameState> shake(const GameState& s, Rng& rng);
GameState permute_state(const GameState& s, const std::vector<int>& perm);

// Per key: 1 + (base - 1) + (delta - 1), clamped and zero-skipped. Throws
// std::invalid_argument on a fingerprint mismatch.
LearningTable merge_experience(const LearningTable& base, const LearningTable& delta);

}  // namespace ramsey
