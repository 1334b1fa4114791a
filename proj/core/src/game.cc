#include "ramsey/game.h"

#include <algorithm>
#include <stdexcept>

#include "ramsey/subgraph.h"

namespace ramsey {

namespace {

struct VariantInfo {
  GameVariant v;
  const char* name;
};

constexpr VariantInfo kVariants[] = {
    {GameVariant::kAvoid, "avoid"},
    {GameVariant::kAvoidMisere, "avoid-misere"},
    {GameVariant::kAvoidPlus, "avoid-plus"},
    {GameVariant::kAchieve, "achieve"},
    {GameVariant::kAchievePrime, "achieve-prime"},
    {GameVariant::kAchieveWeak, "achieve-weak"},
    {GameVariant::kAsymmetricAvoid, "asymmetric-avoid"},
};

}  // namespace

const char* variant_name(GameVariant v) {
  for (const auto& info : kVariants)
    if (info.v == v) return info.name;
  return "unknown";
}

GameVariant parse_variant(std::string_view name) {
  for (const auto& info : kVariants)
    if (name == info.name) return info.v;
  if (name == "misere") return GameVariant::kAvoidMisere;
  if (name == "plus") return GameVariant::kAvoidPlus;
  throw std::invalid_argument("unknown variant '" + std::string(name) + "'");
}

bool is_normal_play_avoid(GameVariant v) {
  return v == GameVariant::kAvoid || v == GameVariant::kAvoidPlus ||
         v == GameVariant::kAsymmetricAvoid;
}

bool is_achievement(GameVariant v) {
  return v == GameVariant::kAchieve || v == GameVariant::kAchievePrime ||
         v == GameVariant::kAchieveWeak;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::kOngoing: return "ongoing";
    case Status::kRedWin: return "red-win";
    case Status::kGreenWin: return "green-win";
    case Status::kTie: return "tie";
  }
  return "unknown";
}

ColoredPosition GameSpec::initial_position() const {
  ColoredPosition p(board);
  for (int e : precolor_red) p.set_color(e, Color::kRed);
  for (int e : precolor_green) p.set_color(e, Color::kGreen);
  return p;
}

void GameSpec::validate() const {
  if (!board) throw std::invalid_argument("spec has no board");
  if (target_red.edge_count() == 0 || target_green.edge_count() == 0)
    throw std::invalid_argument("target graph needs at least one edge");
  if (variant != GameVariant::kAsymmetricAvoid && !(target_red == target_green))
    throw std::invalid_argument("only the asymmetric variant takes two targets");
  std::vector<int> seen(board->edge_count(), 0);
  for (int e : precolor_red) {
    if (e < 0 || e >= board->edge_count()) throw std::invalid_argument("precolored edge out of range");
    if (seen[e]++) throw std::invalid_argument("edge precolored twice");
  }
  for (int e : precolor_green) {
    if (e < 0 || e >= board->edge_count()) throw std::invalid_argument("precolored edge out of range");
    if (seen[e]++) throw std::invalid_argument("precolor sets intersect");
  }
  ColoredPosition p = initial_position();
  bool red_has = contains_mono(p, Color::kRed, target_red);
  bool green_has = contains_mono(p, Color::kGreen, target_green);
  if (variant == GameVariant::kAchieveWeak) green_has = false;
  if (red_has || green_has)
    throw std::invalid_argument("precoloring already contains a monochromatic target");
}

GameSpec make_spec(GameVariant v, int n, const Graph& target) {
  GameSpec s;
  s.variant = v;
  s.board = complete_board(n);
  s.target_red = target;
  s.target_green = target;
  return s;
}

GameSpec sim_spec(GameVariant v) { return make_spec(v, 6, clique_graph(3)); }

// ---------------------------------------------------------------------------

namespace {

class SubgraphDetector : public TargetDetector {
 public:
  explicit SubgraphDetector(const GameSpec& s) : red_(s.target_red), green_(s.target_green) {}
  bool completes(const ColoredPosition& p, int edge, Player who) const override {
    return move_completes(p, edge, color_of(who), who == Player::kRed ? red_ : green_);
  }
  bool contains(const ColoredPosition& p, Player who) const override {
    return contains_mono(p, color_of(who), who == Player::kRed ? red_ : green_);
  }

 private:
  Graph red_, green_;
};

class IncidenceDetector : public TargetDetector {
 public:
  explicit IncidenceDetector(const GameSpec& s) {
    ColoredPosition p = s.initial_position();
    for (Player who : {Player::kRed, Player::kGreen}) {
      Side& side = sides_[static_cast<int>(who)];
      Color other = color_of(opponent(who));
      std::vector<bool> allowed(p.edge_count());
      for (int e = 0; e < p.edge_count(); ++e) allowed[e] = p.color(e) != other;
      side.by_edge.assign(p.edge_count(), {});
      for_each_copy(*s.board, allowed, s.target(who), [&](const std::vector<int>& edges) {
        int id = static_cast<int>(side.copies.size());
        side.copies.push_back(edges);
        for (int e : edges) side.by_edge[e].push_back(id);
        return true;
      });
    }
  }

  bool completes(const ColoredPosition& p, int edge, Player who) const override {
    const Side& side = sides_[static_cast<int>(who)];
    Color c = color_of(who);
    for (int id : side.by_edge[edge]) {
      bool all = true;
      for (int e : side.copies[id])
        if (e != edge && p.color(e) != c) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  }

  bool contains(const ColoredPosition& p, Player who) const override {
    const Side& side = sides_[static_cast<int>(who)];
    Color c = color_of(who);
    for (const auto& copy : side.copies) {
      bool all = true;
      for (int e : copy)
        if (p.color(e) != c) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  }

 private:
  struct Side {
    std::vector<std::vector<int>> copies;
    std::vector<std::vector<int>> by_edge;
  };
  Side sides_[2];
};

}  // namespace

std::shared_ptr<const TargetDetector> subgraph_detector(const GameSpec& spec) {
  return std::make_shared<SubgraphDetector>(spec);
}

std::shared_ptr<const TargetDetector> incidence_detector(const GameSpec& spec) {
  return std::make_shared<IncidenceDetector>(spec);
}

// ---------------------------------------------------------------------------

SubsetMoveStream::SubsetMoveStream(const GameEngine& engine, const GameState& state)
    : detector_(engine.detector()), mover_(state.to_move), pos_(state.position) {
  if (state.terminal() && state.reason != EndReason::kNoMoves)
    throw std::logic_error("no moves from a terminal state");
  if (!state.terminal())
    for (int e = 0; e < pos_.edge_count(); ++e)
      if (pos_.color(e) == Color::kUncolored) free_.push_back(e);
}

bool SubsetMoveStream::next(Move& out) {
  const int k = static_cast<int>(free_.size());
  Color c = color_of(mover_);
  while (true) {
    if (cursor_ < k) {
      int j = cursor_++;
      if (detector_.completes(pos_, free_[j], mover_)) continue;
      pos_.set_color(free_[j], c);
      chosen_.push_back(j);
      cursor_ = j + 1;
      out.edges.clear();
      for (int i : chosen_) out.edges.push_back(free_[i]);
      return true;
    }
    if (chosen_.empty()) return false;
    int j = chosen_.back();
    chosen_.pop_back();
    pos_.set_color(free_[j], Color::kUncolored);
    cursor_ = j + 1;
  }
}

GameEngine::GameEngine(GameSpec spec, std::shared_ptr<const TargetDetector> detector)
    : spec_(std::move(spec)), detector_(std::move(detector)) {
  spec_.validate();
  if (!detector_) detector_ = subgraph_detector(spec_);
}

bool GameEngine::has_single_edge_move(const ColoredPosition& p, Player who) const {
  for (int e = 0; e < p.edge_count(); ++e)
    if (p.color(e) == Color::kUncolored && !completes(p, e, who)) return true;
  return false;
}

GameState GameEngine::initial_state() const {
  GameState s;
  s.position = spec_.initial_position();
  s.to_move = Player::kRed;
  if (is_normal_play_avoid(spec_.variant)) {
    if (!has_single_edge_move(s.position, Player::kRed)) {
      s.status = Status::kGreenWin;
      s.reason = EndReason::kNoMoves;
    }
  } else if (s.position.is_full()) {
    s.reason = EndReason::kBoardFull;
    s.status = spec_.variant == GameVariant::kAvoidMisere || spec_.variant == GameVariant::kAchieve
                   ? Status::kTie
                   : Status::kGreenWin;
  }
  return s;
}

std::vector<int> GameEngine::legal_edges(const GameState& s) const {
  if (s.terminal()) {
    if (s.reason == EndReason::kNoMoves) return {};
    throw std::logic_error("no moves from a terminal state");
  }
  std::vector<int> out;
  bool avoid = is_normal_play_avoid(spec_.variant);
  for (int e = 0; e < s.position.edge_count(); ++e) {
    if (s.position.color(e) != Color::kUncolored) continue;
    if (avoid && completes(s.position, e, s.to_move)) continue;
    out.push_back(e);
  }
  return out;
}

std::vector<Move> GameEngine::legal_moves(const GameState& s) const {
  std::vector<Move> out;
  if (spec_.variant == GameVariant::kAvoidPlus) {
    SubsetMoveStream stream(*this, s);
    Move m;
    while (stream.next(m)) out.push_back(m);
    return out;
  }
  for (int e : legal_edges(s)) out.push_back(Move{{e}});
  return out;
}

std::string GameEngine::check_move(const GameState& s, const Move& m) const {
  if (s.terminal()) return "game is over";
  if (m.edges.empty()) return "move colors no edge";
  if (m.edges.size() > 1 && spec_.variant != GameVariant::kAvoidPlus)
    return "only one edge per move in this variant";
  ColoredPosition p = s.position;
  Color c = color_of(s.to_move);
  bool avoid = is_normal_play_avoid(spec_.variant);
  for (size_t i = 0; i < m.edges.size(); ++i) {
    int e = m.edges[i];
    if (e < 0 || e >= p.edge_count()) return "edge out of range";
    if (i > 0 && m.edges[i - 1] >= e) return "edges must be distinct and sorted";
    if (p.color(e) != Color::kUncolored) return "edge already colored";
    if (avoid && completes(p, e, s.to_move)) return "move creates the mover's target";
    p.set_color(e, c);
  }
  return "";
}

GameState GameEngine::apply_move(const GameState& s, const Move& m) const {
  std::string why = check_move(s, m);
  if (!why.empty()) throw std::invalid_argument("illegal move: " + why);
  return apply_unchecked(s, m);
}

GameState GameEngine::apply_unchecked(const GameState& s, const Move& m) const {
  GameState t = s;
  Player mover = s.to_move;
  Color c = color_of(mover);
  bool completed = false;
  for (int e : m.edges) {
    if (!completed && !is_normal_play_avoid(spec_.variant) && completes(t.position, e, mover))
      completed = true;
    t.position.set_color(e, c);
  }
  t.to_move = opponent(mover);
  t.move_number = s.move_number + 1;
  const GameVariant v = spec_.variant;
  if (is_normal_play_avoid(v)) {
    if (!has_single_edge_move(t.position, t.to_move)) {
      t.status = win_for(mover);
      t.reason = EndReason::kNoMoves;
    }
    return t;
  }
  if (completed) {
    if (v == GameVariant::kAvoidMisere) {
      t.status = win_for(opponent(mover));
      t.reason = EndReason::kCompleted;
      return t;
    }
    if (v != GameVariant::kAchieveWeak || mover == Player::kRed) {
      t.status = win_for(mover);
      t.reason = EndReason::kCompleted;
      return t;
    }
  }
  if (t.position.is_full()) {
    t.reason = EndReason::kBoardFull;
    t.status = (v == GameVariant::kAvoidMisere || v == GameVariant::kAchieve) ? Status::kTie
                                                                             : Status::kGreenWin;
  }
  return t;
}

bool misere_equiv_check(const GameSpec& spec, int max_uncolored) {
  if (spec.variant == GameVariant::kAsymmetricAvoid)
    throw std::invalid_argument("misere equivalence needs a single target");
  ArrowOptions opt;
  opt.max_uncolored = max_uncolored;
  return arrows(spec.initial_position(), spec.target_red, opt);
}

}  // namespace ramsey
