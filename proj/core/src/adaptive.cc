#include "ramsey/adaptive.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ramsey/table_io.h"

namespace ramsey {

int learning_step(int value, int delta) {
  int r = std::clamp(value + delta, kLearnMin, kLearnMax);
  if (r == 0) r = delta > 0 ? 1 : -1;
  return r;
}

LearningTable::LearningTable(const GameSpec& spec) {
  PositionKeyer keyer(spec, true);
  set_header(spec.fingerprint(), spec.board->vertex_count(), spec.variant,
             (keyer.side_in_key() ? kFlagSideInKey : 0) | (keyer.canonical() ? 0 : kFlagRawKeys));
}

void LearningTable::set_header(uint64_t fingerprint, int vertex_count, GameVariant variant,
                               uint8_t flags) {
  fingerprint_ = fingerprint;
  vertex_count_ = vertex_count;
  variant_ = variant;
  flags_ = flags;
}

int LearningTable::get(uint64_t key) const {
  auto it = values_.find(key);
  return it == values_.end() ? kLearnInitial : it->second;
}

void LearningTable::set(uint64_t key, int value) {
  if (value == 0 || value < kLearnMin || value > kLearnMax)
    throw std::invalid_argument("learned value must be a nonzero byte");
  values_[key] = static_cast<int8_t>(value);
}

std::string serialize_learning_table(const LearningTable& table) {
  TableFile f;
  f.magic = "GRLN1";
  f.vertex_count = static_cast<uint16_t>(table.vertex_count());
  f.variant = static_cast<uint8_t>(table.variant());
  f.flags = table.flags();
  f.fingerprint = table.fingerprint();
  for (const auto& [k, v] : table.values())
    f.entries.emplace_back(from_u64(k), static_cast<uint8_t>(v));
  std::ostringstream out(std::ios::binary);
  write_table_file(out, f);
  return out.str();
}

LearningTable parse_learning_table(const std::string& bytes) {
  std::istringstream in(bytes, std::ios::binary);
  TableFile f = read_table_file(in);
  if (f.magic != "GRLN1") throw TableFormatError("not a learning table");
  LearningTable t;
  t.set_header(f.fingerprint, f.vertex_count, static_cast<GameVariant>(f.variant), f.flags);
  for (const auto& [k, v] : f.entries) {
    if (!fits64(k)) throw TableFormatError("key exceeds 64 bits");
    int value = static_cast<int8_t>(v);
    if (value == 0) throw TableFormatError("learned value 0 is reserved");
    t.set(to_u64(k), value);
  }
  return t;
}

void save_learning_table(const std::string& path, const LearningTable& table) {
  atomic_write_file(path, serialize_learning_table(table));
}

LearningTable load_learning_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_learning_table(bytes);
}

SalienceWeights SalienceWeights::uniform(const Graph& board) {
  return SalienceWeights{std::vector<double>(board.edge_count(), 1.0)};
}

SalienceWeights SalienceWeights::for_board(const Graph& board) {
  SalienceWeights w = uniform(board);
  if (!(board.vertex_count() == 6 && board.is_complete())) return w;
  const int square[] = {1, 2, 4, 5};
  for (int a : square)
    for (int b : square)
      if (a < b) w.weight[board.edge_index(a, b)] = 2.0;
  for (auto [a, b] : {std::pair{0, 1}, {2, 3}, {3, 4}, {0, 5}})
    w.weight[board.edge_index(a, b)] = 1.5;
  return w;
}

namespace {

GameValue child_value(const StrategyTable& strategy, const GameState& child) {
  return child.terminal() ? value_of_status(child.status) : strategy.at(child);
}

}  // namespace

std::vector<MoveScore> move_scores(const GameEngine& engine, const GameState& s,
                                   const StrategyTable& strategy, const LearningTable& learn,
                                   const SalienceWeights& salience, const ScoreWeights& weights) {
  std::vector<MoveScore> out;
  std::vector<GameState> children;
  int best = -1;
  for (Move& m : engine.legal_moves(s)) {
    GameState child = engine.apply_unchecked(s, m);
    GameValue v = child_value(strategy, child);
    best = std::max(best, preference(v, s.to_move));
    out.push_back({std::move(m), v, 0.0});
    children.push_back(std::move(child));
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (preference(out[i].value, s.to_move) != best) continue;
    if (best == 2) {
      out[i].score = 1.0;
      continue;
    }
    const GameState& child = children[i];
    double blunders = 0, sal = 0;
    if (!child.terminal()) {
      for (int e : engine.legal_edges(child)) {
        GameState reply = engine.apply_unchecked(child, Move{{e}});
        if (preference(child_value(strategy, reply), s.to_move) == 2) {
          blunders += 1;
          sal += salience.of(e);
        }
      }
    }
    double learned = learn.get(strategy.keyer().key(child.position, child.to_move));
    out[i].score = weights.alpha * blunders + weights.beta * sal +
                   weights.gamma * std::max(learned, weights.epsilon);
  }
  return out;
}

Move choose_move(const GameEngine& engine, const GameState& s, const StrategyTable& strategy,
                 const LearningTable& learn, const SalienceWeights& salience, Rng& rng,
                 const ScoreWeights& weights) {
  std::vector<MoveScore> scores = move_scores(engine, s, strategy, learn, salience, weights);
  if (scores.empty()) throw std::logic_error("no legal moves to choose from");
  std::vector<double> w;
  for (const MoveScore& ms : scores) w.push_back(ms.score);
  std::discrete_distribution<size_t> pick(w.begin(), w.end());
  return scores[pick(rng)].move;
}

LearningTable update_after_game(const GameEngine& engine, const StrategyTable& strategy,
                                const LearningTable& learn, const GameRecord& record,
                                int learning_factor) {
  if (learning_factor <= 0) throw std::invalid_argument("learning factor must be positive");
  GameState s = engine.initial_state();
  std::set<uint64_t> touched;
  for (const auto& step : record.steps) {
    if (s.terminal()) throw std::invalid_argument("corrupt record: moves after the game ended");
    if (step.mover != s.to_move) throw std::invalid_argument("corrupt record: wrong mover");
    if (step.key != strategy.keyer().key(s.position, s.to_move))
      throw std::invalid_argument("corrupt record: state key mismatch");
    std::string why = engine.check_move(s, step.move);
    if (!why.empty()) throw std::invalid_argument("corrupt record: " + why);
    s = engine.apply_unchecked(s, step.move);
    if (step.mover == record.engine && preference(child_value(strategy, s), record.engine) != 2)
      touched.insert(strategy.keyer().key(s.position, s.to_move));
  }
  if (s.status != record.outcome) throw std::invalid_argument("corrupt record: outcome mismatch");
  if (record.forced_loss && s.reason != EndReason::kNoMoves)
    throw std::invalid_argument("corrupt record: no forced loss occurred");

  int delta = 0;
  if (record.outcome == win_for(record.engine) && record.forced_loss) delta = learning_factor;
  if (record.outcome == win_for(opponent(record.engine))) delta = -learning_factor;
  LearningTable out = learn;
  if (delta == 0) return out;
  for (uint64_t k : touched) out.set(k, learning_step(out.get(k), delta));
  return out;
}

GameState permute_state(const GameState& s, const std::vector<int>& perm) {
  GameState t = s;
  t.position = permute_position(s.position, perm);
  return t;
}

std::pair<std::vector<int>, GameState> shake(const GameState& s, Rng& rng) {
  if (!s.position.board().is_complete()) throw std::invalid_argument("shake needs a complete board");
  std::vector<int> perm(s.position.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return {perm, permute_state(s, perm)};
}

LearningTable merge_experience(const LearningTable& base, const LearningTable& delta) {
  if (base.fingerprint() != delta.fingerprint())
    throw std::invalid_argument("learning tables belong to different game specs");
  LearningTable out = base;
  for (const auto& [k, d] : delta.values()) {
    int shift = d - kLearnInitial;
    if (shift == 0) continue;
    out.set(k, learning_step(base.get(k), shift));
  }
  return out;
}

}  // namespace ramsey
