#include "ramsey/solver.h"

#include <algorithm>
#include <climits>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ramsey {

const char* value_name(GameValue v) {
  switch (v) {
    case GameValue::kRedWin: return "R-WIN";
    case GameValue::kRedLoss: return "R-LOSS";
    case GameValue::kTie: return "TIE";
  }
  return "unknown";
}

int preference(GameValue v, Player p) {
  if (v == GameValue::kTie) return 1;
  bool red_wins = v == GameValue::kRedWin;
  return (red_wins == (p == Player::kRed)) ? 2 : 0;
}

GameValue value_of_status(Status s) {
  switch (s) {
    case Status::kRedWin: return GameValue::kRedWin;
    case Status::kGreenWin: return GameValue::kRedLoss;
    case Status::kTie: return GameValue::kTie;
    case Status::kOngoing: break;
  }
  throw std::logic_error("ongoing game has no final value");
}

GameValue win_value(Player p) {
  return p == Player::kRed ? GameValue::kRedWin : GameValue::kRedLoss;
}

// ---------------------------------------------------------------------------

PositionKeyer::PositionKeyer(const GameSpec& spec, bool canonical) {
  side_in_key_ = spec.variant == GameVariant::kAvoidPlus;
  const int limit = side_in_key_ ? kMaxEdges64 - 1 : kMaxEdges64;
  const Graph& board = *spec.board;
  if (canonical && board.is_complete() && board.edge_count() <= limit) {
    canonical_ = true;
    return;
  }
  std::vector<bool> fixed(board.edge_count(), false);
  for (int e : spec.precolor_red) fixed[e] = true;
  for (int e : spec.precolor_green) fixed[e] = true;
  for (int e = 0; e < board.edge_count(); ++e)
    if (!fixed[e]) free_.push_back(e);
  if (static_cast<int>(free_.size()) > limit)
    throw std::length_error("too many uncolored edges for 64-bit table keys");
}

uint64_t PositionKeyer::key(const ColoredPosition& p, Player to_move) const {
  uint64_t code = 0;
  if (canonical_) {
    code = canonical_code64(p);
  } else {
    for (size_t i = free_.size(); i-- > 0;) code = code * 3 + p.digits()[free_[i]];
  }
  return side_in_key_ ? code * 2 + static_cast<uint64_t>(to_move) : code;
}

// ---------------------------------------------------------------------------

StrategyTable::StrategyTable(const GameSpec& spec, bool canonical)
    : keyer_(spec, canonical),
      fingerprint_(spec.fingerprint()),
      vertex_count_(spec.board->vertex_count()),
      variant_(spec.variant) {}

std::optional<GameValue> StrategyTable::find(uint64_t key) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const auto& e, uint64_t k) { return e.first < k; });
  if (it == entries_.end() || it->first != key) return std::nullopt;
  return it->second;
}

GameValue StrategyTable::at(uint64_t key) const {
  auto v = find(key);
  if (!v) throw std::out_of_range("position not in strategy table");
  return *v;
}

std::optional<GameValue> StrategyTable::find(const GameState& s) const {
  return find(keyer_.key(s.position, s.to_move));
}

GameValue StrategyTable::at(const GameState& s) const {
  return at(keyer_.key(s.position, s.to_move));
}

void StrategyTable::set_entries(std::vector<std::pair<uint64_t, GameValue>> sorted_entries) {
  for (size_t i = 1; i < sorted_entries.size(); ++i)
    if (sorted_entries[i - 1].first >= sorted_entries[i].first)
      throw std::invalid_argument("table entries must be sorted with unique keys");
  entries_ = std::move(sorted_entries);
}

uint64_t StrategyTable::content_fingerprint() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t x, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : entries_) {
    mix(k, 8);
    mix(static_cast<uint64_t>(v), 1);
  }
  return h;
}

// ---------------------------------------------------------------------------

namespace {

struct Node {
  GameValue value;
  // Plies until the game ends under optimal length play: a player left
  // without a move on a nonfull board spends one more ply failing, a full
  // board ends at the last move made. 0 for ties.
  int depth;
};

class Solver {
 public:
  Solver(const GameEngine& engine, const PositionKeyer& keyer, uint64_t max_entries)
      : eng_(engine), keyer_(keyer), variant_(engine.spec().variant), max_entries_(max_entries) {}

  Node visit(ColoredPosition& p, Player mover) {
    uint64_t key = keyer_.key(p, mover);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Player opp = opponent(mover);
    Color c = color_of(mover);
    Chooser choose(mover);

    for (int e = 0; e < p.edge_count(); ++e) {
      if (p.color(e) != Color::kUncolored) continue;
      bool comp = eng_.completes(p, e, mover);
      p.set_color(e, c);
      std::optional<GameValue> terminal;
      if (comp && !(variant_ == GameVariant::kAchieveWeak && mover == Player::kGreen)) {
        terminal = variant_ == GameVariant::kAvoidMisere ? win_value(opp) : win_value(mover);
      } else if (p.is_full() && !is_normal_play_avoid(variant_)) {
        terminal = (variant_ == GameVariant::kAvoidMisere || variant_ == GameVariant::kAchieve)
                       ? GameValue::kTie
                       : GameValue::kRedLoss;
      }
      if (terminal) terminal_keys_.insert(keyer_.key(p, opp));
      if (variant_ == GameVariant::kAvoidPlus || (comp && is_normal_play_avoid(variant_))) {
        p.set_color(e, Color::kUncolored);
        continue;
      }
      if (terminal) {
        choose.add(*terminal, 1);
      } else {
        Node child = visit(p, opp);
        choose.add(child.value, child.depth + 1);
      }
      p.set_color(e, Color::kUncolored);
    }

    if (variant_ == GameVariant::kAvoidPlus) {
      GameState s;
      s.position = p;
      s.to_move = mover;
      SubsetMoveStream stream(eng_, s);
      std::unordered_set<uint64_t> seen;
      Move m;
      while (stream.next(m)) {
        ColoredPosition q = p;
        for (int e : m.edges) q.set_color(e, c);
        if (!seen.insert(keyer_.key(q, opp)).second) continue;
        Node child = visit(q, opp);
        choose.add(child.value, child.depth + 1);
      }
    }

    Node result = choose.result(p.is_full());
    if (memo_.size() >= max_entries_) throw BudgetExceeded("strategy table exceeds max_entries");
    memo_.emplace(key, result);
    return result;
  }

  const std::unordered_map<uint64_t, Node>& memo() const { return memo_; }
  size_t terminal_count() const { return terminal_keys_.size(); }

 private:
  // Best value for the mover; the winner prefers short wins and the loser
  // long losses.
  class Chooser {
   public:
    explicit Chooser(Player mover) : mover_(mover) {}
    void add(GameValue v, int depth) {
      int pref = preference(v, mover_);
      if (pref > best_) {
        best_ = pref;
        value_ = v;
        depth_ = depth;
      } else if (pref == best_) {
        depth_ = pref == 2 ? std::min(depth_, depth) : std::max(depth_, depth);
      }
    }
    Node result(bool board_full) const {
      if (best_ < 0) return {win_value(opponent(mover_)), board_full ? 0 : 1};
      return {value_, best_ == 1 ? 0 : depth_};
    }

   private:
    Player mover_;
    int best_ = -1;
    GameValue value_ = GameValue::kTie;
    int depth_ = 0;
  };

  const GameEngine& eng_;
  const PositionKeyer& keyer_;
  GameVariant variant_;
  uint64_t max_entries_;
  std::unordered_map<uint64_t, Node> memo_;
  std::unordered_set<uint64_t> terminal_keys_;
};

}  // namespace

StrategyTable solve(const GameEngine& engine, const SolveOptions& opt) {
  const GameSpec& spec = engine.spec();
  StrategyTable table(spec, opt.canonical);
  GameState start = engine.initial_state();
  if (start.terminal() && start.reason != EndReason::kNoMoves) {
    // Already decided with no player to move; nothing to store.
    table.set_root_value(value_of_status(start.status));
    table.stats().earliest_forced_win =
        start.status == Status::kTie ? std::nullopt : std::optional<int>(0);
    return table;
  }
  Solver solver(engine, table.keyer(), opt.max_entries);
  ColoredPosition p = start.position;
  Node root = solver.visit(p, Player::kRed);

  std::vector<std::pair<uint64_t, GameValue>> entries;
  entries.reserve(solver.memo().size());
  for (const auto& [k, node] : solver.memo()) entries.emplace_back(k, node.value);
  std::sort(entries.begin(), entries.end());
  table.set_entries(std::move(entries));
  table.set_root_value(root.value);
  SolveStats& st = table.stats();
  st.nonisomorphic_stored = solver.memo().size();
  st.nonisomorphic_with_terminal = solver.memo().size() + solver.terminal_count();
  if (root.value != GameValue::kTie) st.earliest_forced_win = root.depth;
  return table;
}

StrategyTable solve(const GameSpec& spec, const SolveOptions& opt) {
  GameEngine engine(spec);
  return solve(engine, opt);
}

GameValue value_after(const GameEngine& engine, const GameState& s, const Move& m,
                      const StrategyTable& table) {
  GameState t = engine.apply_move(s, m);
  if (t.terminal()) return value_of_status(t.status);
  return table.at(t);
}

std::vector<Move> best_moves(const GameEngine& engine, const GameState& s,
                             const StrategyTable& table) {
  std::vector<Move> best;
  int best_pref = -1;
  for (const Move& m : engine.legal_moves(s)) {
    int pref = preference(value_after(engine, s, m, table), s.to_move);
    if (pref > best_pref) {
      best_pref = pref;
      best.clear();
    }
    if (pref == best_pref) best.push_back(m);
  }
  return best;
}

int earliest_forced_win(const StrategyTable& table) {
  if (!table.stats().earliest_forced_win)
    throw std::logic_error("no forced win: the root value is a tie");
  return *table.stats().earliest_forced_win;
}

PositionCensus census_positions(const GameEngine& engine, const CanonicalOptions& opt) {
  const GameSpec& spec = engine.spec();
  if (spec.variant == GameVariant::kAvoidPlus)
    throw std::invalid_argument("census covers single-edge variants");
  if (!spec.board->is_complete() || spec.board->edge_count() > kMaxEdges64)
    throw std::invalid_argument("census needs a complete board with at most 40 edges");
  std::unordered_set<uint64_t> stored, terminal;
  std::deque<ColoredPosition> queue;
  GameState start = engine.initial_state();
  if (start.terminal() && start.reason != EndReason::kNoMoves) return {1, 0};
  const GameVariant v = spec.variant;
  auto mover_of = [&](const ColoredPosition& p) {
    int made = p.red_count() + p.green_count() -
               static_cast<int>(spec.precolor_red.size() + spec.precolor_green.size());
    return made % 2 == 0 ? Player::kRed : Player::kGreen;
  };
  stored.insert(canonical_code64(start.position, opt));
  queue.push_back(start.position);
  while (!queue.empty()) {
    ColoredPosition p = std::move(queue.front());
    queue.pop_front();
    Player mover = mover_of(p);
    for (int e = 0; e < p.edge_count(); ++e) {
      if (p.color(e) != Color::kUncolored) continue;
      bool comp = engine.completes(p, e, mover);
      ColoredPosition q = p;
      q.set_color(e, color_of(mover));
      uint64_t k = canonical_code64(q, opt);
      bool ends = (comp && !(v == GameVariant::kAchieveWeak && mover == Player::kGreen)) ||
                  (q.is_full() && !is_normal_play_avoid(v));
      if (ends) {
        terminal.insert(k);
      } else if (stored.insert(k).second) {
        queue.push_back(std::move(q));
      }
    }
  }
  return {stored.size() + terminal.size(), stored.size()};
}

const char* bounds_name(BoundsVerdict v) {
  switch (v) {
    case BoundsVerdict::kFirstWin: return "FirstWin";
    case BoundsVerdict::kTie: return "Tie";
    case BoundsVerdict::kUnknown: return "Unknown";
  }
  return "unknown";
}

BoundsVerdict bounds_predicate(int n, int k) {
  if (n < 1 || k < 2) throw std::invalid_argument("bounds need n >= 1 and k >= 2");
  mpz_class four_k;
  mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
  bool first = four_k <= n;
  unsigned long l = static_cast<unsigned long>(k) * (k - 1) / 2 - 1;
  mpz_class two_l, binom;
  mpz_ui_pow_ui(two_l.get_mpz_t(), 2, l);
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  bool tie = two_l > binom;
  if (first && tie) throw std::logic_error("bounds contradict each other");
  if (first) return BoundsVerdict::kFirstWin;
  if (tie) return BoundsVerdict::kTie;
  return BoundsVerdict::kUnknown;
}

}  // namespace ramsey
