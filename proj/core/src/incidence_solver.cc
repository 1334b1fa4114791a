#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ramsey/reductions.h"
#include "ramsey/subgraph.h"

namespace ramsey {

namespace {

class MaskGame {
 public:
  MaskGame(const GameSpec& spec, uint64_t max_states)
      : variant_(spec.variant), max_states_(max_states) {
    spec.validate();
    ColoredPosition p = spec.initial_position();
    std::vector<int> bit(p.edge_count(), -1);
    for (int e = 0; e < p.edge_count(); ++e)
      if (p.color(e) == Color::kUncolored) {
        bit[e] = k_;
        ++k_;
      }
    const int limit = variant_ == GameVariant::kAvoidPlus ? 31 : 32;
    if (k_ > limit) throw std::length_error("incidence solver: too many uncolored edges");
    full_ = k_ == 32 ? ~0u : (1u << k_) - 1;
    for (Player who : {Player::kRed, Player::kGreen}) {
      auto& side = copies_[static_cast<int>(who)];
      side.assign(k_, {});
      Color other = color_of(opponent(who));
      std::vector<bool> allowed(p.edge_count());
      for (int e = 0; e < p.edge_count(); ++e) allowed[e] = p.color(e) != other;
      std::unordered_set<uint32_t> seen;
      for_each_copy(*spec.board, allowed, spec.target(who), [&](const std::vector<int>& edges) {
        uint32_t mask = 0;
        for (int e : edges)
          if (bit[e] >= 0) mask |= 1u << bit[e];
        if (mask && seen.insert(mask).second)
          for (int i = 0; i < k_; ++i)
            if (mask >> i & 1) side[i].push_back(mask);
        return true;
      });
    }
  }

  GameValue solve() { return visit(0, 0, Player::kRed); }
  uint64_t states() const { return memo_.size(); }

 private:
  bool completes(uint32_t mine, int i, Player who) const {
    uint32_t have = mine | (1u << i);
    for (uint32_t c : copies_[static_cast<int>(who)][i])
      if ((c & ~have) == 0) return true;
    return false;
  }

  GameValue visit(uint32_t red, uint32_t green, Player mover) {
    uint64_t key = static_cast<uint64_t>(red) | static_cast<uint64_t>(green) << 32;
    if (variant_ == GameVariant::kAvoidPlus && mover == Player::kGreen) key |= uint64_t{1} << 63;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Player opp = opponent(mover);
    uint32_t& mine = mover == Player::kRed ? red : green;
    uint32_t free = full_ & ~(red | green);
    int best = -1;
    GameValue value = GameValue::kTie;
    auto take = [&](GameValue v) {
      int pref = preference(v, mover);
      if (pref > best) {
        best = pref;
        value = v;
      }
    };

    if (variant_ == GameVariant::kAvoidPlus) {
      std::vector<int> options;
      for (int i = 0; i < k_; ++i)
        if (free >> i & 1) options.push_back(i);
      std::unordered_set<uint32_t> seen;
      uint32_t base = mine;
      // Every nonempty subset that never completes the mover's target.
      std::vector<int> stack;
      size_t cursor = 0;
      while (best < 2) {
        if (cursor < options.size()) {
          int i = options[cursor++];
          if (completes(mine, i, mover)) continue;
          mine |= 1u << i;
          stack.push_back(static_cast<int>(cursor - 1));
          if (seen.insert(mine).second) take(visit(red, green, opp));
          continue;
        }
        if (stack.empty()) break;
        cursor = static_cast<size_t>(stack.back());
        stack.pop_back();
        mine &= ~(1u << options[cursor]);
        ++cursor;
      }
      mine = base;
    } else {
      for (int i = 0; i < k_ && best < 2; ++i) {
        if (!(free >> i & 1)) continue;
        bool comp = completes(mine, i, mover);
        if (comp && is_normal_play_avoid(variant_)) continue;
        mine |= 1u << i;
        bool full = (red | green) == full_;
        if (comp && !(variant_ == GameVariant::kAchieveWeak && mover == Player::kGreen)) {
          take(variant_ == GameVariant::kAvoidMisere ? win_value(opp) : win_value(mover));
        } else if (full && !is_normal_play_avoid(variant_)) {
          take((variant_ == GameVariant::kAvoidMisere || variant_ == GameVariant::kAchieve)
                   ? GameValue::kTie
                   : GameValue::kRedLoss);
        } else {
          take(visit(red, green, opp));
        }
        mine &= ~(1u << i);
      }
    }
    if (best < 0) value = win_value(opp);
    if (memo_.size() >= max_states_) throw BudgetExceeded("incidence solver exceeds max_states");
    memo_.emplace(key, value);
    return value;
  }

  GameVariant variant_;
  uint64_t max_states_;
  int k_ = 0;
  uint32_t full_ = 0;
  std::vector<std::vector<uint32_t>> copies_[2];
  std::unordered_map<uint64_t, GameValue> memo_;
};

}  // namespace

IncidenceSolveResult solve_incidence(const GameSpec& spec, uint64_t max_states) {
  MaskGame game(spec, max_states);
  IncidenceSolveResult r;
  r.root = game.solve();
  r.states = game.states();
  return r;
}

}  // namespace ramsey
