#pragma once

#include <vector>

#include <gmpxx.h>

namespace ramsey {

// Cycle type of a permutation of n points: m[i] cycles of length i, for
// 1 <= i <= n (m[0] unused).
struct Partition {
  std::vector<int> m;
  int n() const;
};

// Every partition of n exactly once, largest parts first.
std::vector<Partition> partitions(int n);

// One term of the cycle index of S_n acting on the pairs of [n].
struct CycleIndexMonomial {
  mpq_class coefficient;       // 1 / prod k^{m_k} m_k!
  std::vector<int> exponents;  // exponents[i] is the power of p_i; index 0 unused
  Partition cycle_type;
};

std::vector<CycleIndexMonomial> cycle_index_pair_group(int n);

// Evaluates the cycle index with every p_i set to value.
mpq_class evaluate_cycle_index(const std::vector<CycleIndexMonomial>& z, const mpq_class& value);

// Dense coefficients c[r][g] for 0 <= r, g <= degree.
class BivariatePolynomial {
 public:
  explicit BivariatePolynomial(int degree = 0);
  int degree() const { return degree_; }
  mpz_class& at(int r, int g) { return c_[r * (degree_ + 1) + g]; }
  const mpz_class& at(int r, int g) const { return c_[r * (degree_ + 1) + g]; }

 private:
  int degree_;
  std::vector<mpz_class> c_;
};

// Coefficients of x^r y^g in Z(S_n^{(2)}) with p_i -> 1 + x^i + y^i, that
// is the number of non-isomorphic (r, g) colorings of K_n. Cached per n.
const BivariatePolynomial& coloring_polynomial(int n);

mpz_class count_colorings(int n, int r, int g);

// Sum of count_colorings over r = g or r = g + 1.
mpz_class total_legal_positions(int n);

}  // namespace ramsey
