#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ramsey/formula.h"
#include "ramsey/game.h"
#include "ramsey/solver.h"

namespace ramsey {

enum class ReductionKind { kAvoid, kAchieveWeak, kAchieve };
const char* reduction_name(ReductionKind k);
ReductionKind parse_reduction_kind(std::string_view name);

// Vertex names follow the construction: "u0,0", "r0t", "d2b", "w3,1",
// "f2,1", "v4,5", "y1t" for the CNF game; "u1,0", "v1,2" (leg 2 of
// disjunct 1), "r1t", "x3t", "h0", "s5,0" for the DNF games. Named edges
// are the uncolored ones: "r0", "r1", "y1", "g1", "d1" and "X1", "S1".
struct ReductionOutput {
  GameSpec spec;
  std::vector<std::string> vertex_names;
  std::map<std::string, int> vertex;
  std::map<std::string, int> edge;

  int vertex_id(const std::string& name) const;
  int edge_id(const std::string& name) const;
};

// Positive CNF to Avoid with the bow-tie target.
ReductionOutput reduce_cnf_to_avoid(const PositiveFormula& f);
// Positive DNF to AchieveWeak with the m-topus target, m the largest clause.
ReductionOutput reduce_dnf_to_achieve_weak(const PositiveFormula& f);
// As above with m = n plus a green 3n-topus whose feet are uncolored.
ReductionOutput reduce_dnf_to_achieve(const PositiveFormula& f);
ReductionOutput reduce(const PositiveFormula& f, ReductionKind kind);

// Solver over the uncolored edges using precomputed target copies. Handles
// every variant; state keys are (red mask, green mask) pairs.
struct IncidenceSolveResult {
  GameValue root = GameValue::kTie;
  uint64_t states = 0;
};
// Throws std::length_error past 32 uncolored edges, BudgetExceeded past
// max_states.
IncidenceSolveResult solve_incidence(const GameSpec& spec, uint64_t max_states = 50'000'000);

struct ReductionCheck {
  FormulaWinner formula_winner = FormulaWinner::kI;
  GameValue graph_value = GameValue::kTie;
  uint64_t graph_states = 0;
  // I wins iff Red wins.
  bool preserved = false;
};
ReductionCheck verify_reduction(const PositiveFormula& f, ReductionKind kind,
                                uint64_t max_states = 50'000'000);

}  // namespace ramsey
