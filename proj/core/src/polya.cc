#include "ramsey/polya.h"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "ramsey/canonical.h"

namespace ramsey {

int Partition::n() const {
  int s = 0;
  for (size_t i = 1; i < m.size(); ++i) s += static_cast<int>(i) * m[i];
  return s;
}

namespace {

void partitions_rec(int remaining, int largest, Partition& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(largest, remaining); part >= 1; --part) {
    ++cur.m[part];
    partitions_rec(remaining - part, part, cur, out);
    --cur.m[part];
  }
}

// n! / prod k^{m_k} m_k!, the number of permutations with this cycle type.
mpz_class class_size(const Partition& p, int n) {
  mpz_class denom = 1;
  for (int k = 1; k <= n; ++k) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(p.m[k]));
    denom *= pw * factorial(p.m[k]);
  }
  return factorial(n) / denom;
}

std::vector<int> pair_exponents(const Partition& p, int n) {
  const int edges = n * (n - 1) / 2;
  std::vector<int> e(std::max(edges, 1) + 1, 0);
  for (int k = 1; k <= n; ++k) {
    int j = p.m[k];
    if (j == 0) continue;
    if (k % 2 == 1) {
      e[k] += (k - 1) / 2 * j;
    } else {
      e[k / 2] += j;
      e[k] += (k / 2 - 1) * j;
    }
    e[k] += k * (j * (j - 1) / 2);
    for (int t = k + 1; t <= n; ++t) {
      if (p.m[t] == 0) continue;
      int g = std::gcd(k, t);
      e[k / g * t] += g * j * p.m[t];
    }
  }
  return e;
}

// (1 + x^i + y^i)^e multiplied into acc, keeping total degree <= acc.degree().
void multiply_factor(BivariatePolynomial& acc, int i, int e, int& support) {
  if (e == 0) return;
  const int d = acc.degree();
  BivariatePolynomial out(d);
  std::vector<std::pair<std::pair<int, int>, mpz_class>> terms;
  for (int a = 0; a <= e; ++a) {
    mpz_class ca;
    mpz_bin_uiui(ca.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(a));
    for (int b = 0; a + b <= e; ++b) {
      if (i * (a + b) > d) break;
      mpz_class cb;
      mpz_bin_uiui(cb.get_mpz_t(), static_cast<unsigned long>(e - a), static_cast<unsigned long>(b));
      terms.push_back({{i * a, i * b}, ca * cb});
    }
  }
  for (int r = 0; r <= support; ++r)
    for (int g = 0; r + g <= support; ++g) {
      const mpz_class& c = acc.at(r, g);
      if (c == 0) continue;
      for (const auto& [deg, coef] : terms) {
        int rr = r + deg.first, gg = g + deg.second;
        if (rr + gg > d) continue;
        mpz_addmul(out.at(rr, gg).get_mpz_t(), c.get_mpz_t(), coef.get_mpz_t());
      }
    }
  support = std::min(d, support + i * e);
  acc = std::move(out);
}

BivariatePolynomial compute_polynomial(int n) {
  const int edges = n * (n - 1) / 2;
  BivariatePolynomial total(edges);
  for (const Partition& p : partitions(n)) {
    std::vector<int> e = pair_exponents(p, n);
    // Largest factor first so the accumulator grows from a wide base.
    std::vector<int> order;
    for (int i = 1; i < static_cast<int>(e.size()); ++i)
      if (e[i] > 0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return a * e[a] > b * e[b]; });
    BivariatePolynomial acc(edges);
    acc.at(0, 0) = 1;
    int support = 0;
    for (int i : order) multiply_factor(acc, i, e[i], support);
    mpz_class weight = class_size(p, n);
    for (int r = 0; r <= edges; ++r)
      for (int g = 0; r + g <= edges; ++g)
        if (acc.at(r, g) != 0) mpz_addmul(total.at(r, g).get_mpz_t(), weight.get_mpz_t(), acc.at(r, g).get_mpz_t());
  }
  mpz_class nf = factorial(n);
  for (int r = 0; r <= edges; ++r)
    for (int g = 0; g <= edges; ++g) {
      mpz_class& c = total.at(r, g);
      if (!mpz_divisible_p(c.get_mpz_t(), nf.get_mpz_t()))
        throw std::logic_error("cycle index sum is not divisible by n!");
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), nf.get_mpz_t());
    }
  return total;
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 1) throw std::invalid_argument("partitions need n >= 1");
  std::vector<Partition> out;
  Partition cur;
  cur.m.assign(n + 1, 0);
  partitions_rec(n, n, cur, out);
  return out;
}

std::vector<CycleIndexMonomial> cycle_index_pair_group(int n) {
  if (n < 2) throw std::invalid_argument("pair group needs n >= 2");
  std::vector<CycleIndexMonomial> out;
  mpz_class nf = factorial(n);
  for (const Partition& p : partitions(n)) {
    CycleIndexMonomial mono;
    mono.coefficient = mpq_class(class_size(p, n), nf);
    mono.coefficient.canonicalize();
    mono.exponents = pair_exponents(p, n);
    mono.cycle_type = p;
    out.push_back(std::move(mono));
  }
  return out;
}

mpq_class evaluate_cycle_index(const std::vector<CycleIndexMonomial>& z, const mpq_class& value) {
  mpq_class sum = 0;
  for (const auto& mono : z) {
    int degree = 0;
    for (int x : mono.exponents) degree += x;
    mpq_class term = mono.coefficient;
    for (int i = 0; i < degree; ++i) term *= value;
    sum += term;
  }
  return sum;
}

BivariatePolynomial::BivariatePolynomial(int degree)
    : degree_(degree), c_(static_cast<size_t>(degree + 1) * (degree + 1)) {}

const BivariatePolynomial& coloring_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<BivariatePolynomial>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<BivariatePolynomial>(compute_polynomial(n));
  return *slot;
}

mpz_class count_colorings(int n, int r, int g) {
  const int edges = n * (n - 1) / 2;
  if (r < 0 || g < 0 || r + g > edges) throw std::invalid_argument("need r + g <= C(n,2)");
  return coloring_polynomial(n).at(r, g);
}

mpz_class total_legal_positions(int n) {
  const int edges = n * (n - 1) / 2;
  const BivariatePolynomial& poly = coloring_polynomial(n);
  mpz_class sum = 0;
  for (int g = 0; 2 * g <= edges; ++g) {
    sum += poly.at(g, g);
    if (2 * g + 1 <= edges) sum += poly.at(g + 1, g);
  }
  return sum;
}

}  // namespace ramsey
