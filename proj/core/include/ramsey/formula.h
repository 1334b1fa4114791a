#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ramsey {

enum class FormulaKind { kCnf, kDnf };

// Positive CNF (clauses are disjunctions) or DNF (clauses are conjunctions).
// Variables are numbered 1..n.
struct PositiveFormula {
  FormulaKind kind = FormulaKind::kCnf;
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;

  // Sorts each clause, drops repeated variables, sorts the clause list.
  void normalize();
  // Throws std::invalid_argument: empty clause, variable out of range, or a
  // variable that appears nowhere.
  void validate() const;
};

PositiveFormula make_formula(FormulaKind kind, int n, std::vector<std::vector<int>> clauses);

// Header `POSCNF v1` or `POSDNF v1`, a line `n <int>`, then one clause per
// line. Blank lines and lines starting with # are skipped.
PositiveFormula parse_formula(std::string_view text);
std::string format_formula(const PositiveFormula& f);

enum class FormulaWinner { kI, kII };
const char* winner_name(FormulaWinner w);

// Players alternately pick unchosen variables, I first. CNF: I wins iff
// every clause holds a variable of I. DNF: I wins iff I owns a whole
// clause. Throws std::length_error above max_variables.
FormulaWinner solve_poscnf_game(const PositiveFormula& f, int max_variables = 18);
FormulaWinner solve_posdnf_game(const PositiveFormula& f, int max_variables = 18);
FormulaWinner solve_formula_game(const PositiveFormula& f, int max_variables = 18);

}  // namespace ramsey
