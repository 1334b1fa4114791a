#include "ramsey/formula.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ramsey {

void PositiveFormula::normalize() {
  for (auto& c : clauses) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  std::sort(clauses.begin(), clauses.end());
}

void PositiveFormula::validate() const {
  if (variable_count < 1) throw std::invalid_argument("formula needs at least one variable");
  if (clauses.empty()) throw std::invalid_argument("formula needs at least one clause");
  std::vector<bool> used(variable_count + 1, false);
  for (const auto& c : clauses) {
    if (c.empty()) throw std::invalid_argument("empty clause");
    for (int x : c) {
      if (x < 1 || x > variable_count) throw std::invalid_argument("variable out of range");
      used[x] = true;
    }
  }
  for (int x = 1; x <= variable_count; ++x)
    if (!used[x]) throw std::invalid_argument("variable x" + std::to_string(x) + " appears nowhere");
}

PositiveFormula make_formula(FormulaKind kind, int n, std::vector<std::vector<int>> clauses) {
  PositiveFormula f{kind, n, std::move(clauses)};
  f.normalize();
  f.validate();
  return f;
}

PositiveFormula parse_formula(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  PositiveFormula f;
  if (!next_line()) throw std::invalid_argument("formula: missing header");
  if (line == "POSCNF v1") f.kind = FormulaKind::kCnf;
  else if (line == "POSDNF v1") f.kind = FormulaKind::kDnf;
  else throw std::invalid_argument("formula: bad header '" + line + "'");
  if (!next_line()) throw std::invalid_argument("formula: missing n line");
  {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag >> f.variable_count) || tag != "n")
      throw std::invalid_argument("formula: expected 'n <int>'");
  }
  while (next_line()) {
    std::istringstream ls(line);
    std::vector<int> clause;
    std::string tok;
    while (ls >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("formula: bad variable '" + tok + "'");
      clause.push_back(std::stoi(tok));
    }
    f.clauses.push_back(std::move(clause));
  }
  f.normalize();
  f.validate();
  return f;
}

std::string format_formula(const PositiveFormula& f) {
  std::ostringstream out;
  out << (f.kind == FormulaKind::kCnf ? "POSCNF v1" : "POSDNF v1") << "\n";
  out << "n " << f.variable_count << "\n";
  for (const auto& c : f.clauses) {
    for (size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << "\n";
  }
  return out.str();
}

const char* winner_name(FormulaWinner w) { return w == FormulaWinner::kI ? "I" : "II"; }

namespace {

class FormulaGame {
 public:
  explicit FormulaGame(const PositiveFormula& f) : n_(f.variable_count), cnf_(f.kind == FormulaKind::kCnf) {
    for (const auto& c : f.clauses) {
      uint32_t m = 0;
      for (int x : c) m |= 1u << (x - 1);
      masks_.push_back(m);
    }
  }

  // True when player I wins with I owning `mine` and II owning `theirs`,
  // I to move iff the counts are equal.
  bool first_wins(uint32_t mine, uint32_t theirs) {
    if (cnf_) {
      bool all_hit = true;
      for (uint32_t c : masks_) {
        if ((c & ~theirs) == 0) return false;
        if ((c & mine) == 0) all_hit = false;
      }
      if (all_hit) return true;
    } else {
      bool all_blocked = true;
      for (uint32_t c : masks_) {
        if ((c & ~mine) == 0) return true;
        if ((c & theirs) == 0) all_blocked = false;
      }
      if (all_blocked) return false;
    }
    uint64_t key = (static_cast<uint64_t>(mine) << 32) | theirs;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool i_moves = __builtin_popcount(mine) == __builtin_popcount(theirs);
    uint32_t free = ~(mine | theirs) & ((n_ == 32) ? ~0u : ((1u << n_) - 1));
    bool result = !i_moves;
    for (uint32_t rest = free; rest; rest &= rest - 1) {
      uint32_t bit = rest & -rest;
      bool w = i_moves ? first_wins(mine | bit, theirs) : first_wins(mine, theirs | bit);
      if (w == i_moves) {
        result = i_moves;
        break;
      }
    }
    memo_.emplace(key, result);
    return result;
  }

 private:
  int n_;
  bool cnf_;
  std::vector<uint32_t> masks_;
  std::unordered_map<uint64_t, bool> memo_;
};

FormulaWinner solve_kind(const PositiveFormula& f, FormulaKind kind, int max_variables) {
  if (f.kind != kind) throw std::invalid_argument("formula kind does not match the game");
  f.validate();
  if (f.variable_count > std::min(max_variables, 31))
    throw std::length_error("formula game: too many variables");
  FormulaGame g(f);
  return g.first_wins(0, 0) ? FormulaWinner::kI : FormulaWinner::kII;
}

}  // namespace

FormulaWinner solve_poscnf_game(const PositiveFormula& f, int max_variables) {
  return solve_kind(f, FormulaKind::kCnf, max_variables);
}

FormulaWinner solve_posdnf_game(const PositiveFormula& f, int max_variables) {
  return solve_kind(f, FormulaKind::kDnf, max_variables);
}

FormulaWinner solve_formula_game(const PositiveFormula& f, int max_variables) {
  return solve_kind(f, f.kind, max_variables);
}

}  // namespace ramsey
