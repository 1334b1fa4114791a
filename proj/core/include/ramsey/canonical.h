#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "ramsey/graph.h"

namespace ramsey {

enum class CanonicalStrategy {
  kSearch,      // branch and bound over label assignments, exact
  kExhaustive,  // all n! permutations, n <= 8
};

struct CanonicalOptions {
  CanonicalStrategy strategy = CanonicalStrategy::kSearch;
  // Also quotient by exchanging red and green.
  bool swap_colors = false;
  // Partial labelings expanded before giving up.
  uint64_t node_budget = 20'000'000;
};

struct CanonicalForm {
  mpz_class code;
  ColoredPosition representative;
  mpz_class orbit_size;
  // perm[v] is the label of vertex v in the representative.
  std::vector<int> perm;
  bool colors_swapped = false;
};

// Thrown when a canonicalization or automorphism search exceeds its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimum code over all vertex relabelings. Complete boards only.
CanonicalForm canonicalize(const ColoredPosition& p, const CanonicalOptions& opt = {});

// Same minimum as canonicalize, without the orbit size. Boards with at
// most 40 edges.
uint64_t canonical_code64(const ColoredPosition& p, const CanonicalOptions& opt = {});

// Permutation (vertex -> label) attaining the minimum code.
std::vector<int> canonical_labeling(const ColoredPosition& p,
                                    const CanonicalOptions& opt = {},
                                    bool* swapped = nullptr);

// Order of the group of vertex permutations preserving the board and the
// coloring. Works on any board.
mpz_class automorphism_group_order(const ColoredPosition& p,
                                   uint64_t node_budget = 50'000'000);

// n! / |Aut(p)|.
mpz_class orbit_size(const ColoredPosition& p);

mpz_class factorial(int n);

}  // namespace ramsey
