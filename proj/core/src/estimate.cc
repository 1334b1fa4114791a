#include "ramsey/estimate.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "ramsey/canonical.h"
#include "ramsey/polya.h"
#include "ramsey/subgraph.h"

namespace ramsey {

namespace {

mpz_class binomial(int a, int b) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

struct Stratum {
  int r, g;
  uint64_t samples;
};

std::vector<Stratum> legal_strata(int n, const std::function<uint64_t(int)>& samples) {
  const int edges = n * (n - 1) / 2;
  std::vector<Stratum> out;
  for (int s = 0; s <= edges; ++s) out.push_back({(s + 1) / 2, s / 2, samples(s)});
  return out;
}

// Running mean and variance of doubles.
struct Welford {
  uint64_t count = 0;
  double mean = 0.0, m2 = 0.0;
  void add(double x) {
    ++count;
    double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }
  double sample_variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

Rng stratum_rng(uint64_t base, const Stratum& s) {
  std::seed_seq seq{static_cast<uint32_t>(base), static_cast<uint32_t>(base >> 32),
                    static_cast<uint32_t>(s.r), static_cast<uint32_t>(s.g)};
  return Rng(seq);
}

template <typename Fn>
void run_strata(std::vector<StratumEstimate>& out, const std::vector<Stratum>& strata, int threads,
                Fn&& fn) {
  out.assign(strata.size(), {});
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < strata.size();) {
      try {
        out[i] = fn(strata[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next = strata.size();
      }
    }
  };
  int t = std::max(1, threads);
  if (t == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

void finish(EstimateReport& rep) {
  rep.estimate = 0;
  double var = 0.0;
  rep.total_samples = 0;
  for (const auto& s : rep.strata) {
    rep.estimate += s.mean;
    var += s.variance;
    rep.total_samples += s.samples;
  }
  rep.std_error = std::sqrt(var);
  double est = rep.estimate.get_d();
  rep.ci_low = est - kCiZ * rep.std_error;
  rep.ci_high = est + kCiZ * rep.std_error;
}

void check_args(int n, int k) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

}  // namespace

ColoredPosition sample_coloring(int n, int r, int g, Rng& rng) {
  auto board = complete_board(n);
  const int edges = board->edge_count();
  if (r < 0 || g < 0 || r + g > edges) throw std::invalid_argument("need r + g <= C(n,2)");
  std::vector<int> idx(edges);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < r + g; ++i) {
    std::uniform_int_distribution<int> pick(i, edges - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  ColoredPosition p(board);
  for (int i = 0; i < r + g; ++i) p.set_color(idx[i], i < r ? Color::kRed : Color::kGreen);
  return p;
}

int mono_free(const ColoredPosition& p, int k) {
  if (k > p.vertex_count()) return 1;
  Graph a = clique_graph(k);
  return contains_mono(p, Color::kRed, a) || contains_mono(p, Color::kGreen, a) ? 0 : 1;
}

uint64_t default_l2_schedule(int colored, int edges) {
  (void)edges;
  constexpr int kLow = 40, kHigh = 153;
  constexpr uint64_t kMin = 100, kMax = 50'000;
  if (colored < kLow) return kMin;
  if (colored >= kHigh) return kMax;
  return kMin + (kMax - kMin) * static_cast<uint64_t>(colored - kLow) / (kHigh - kLow);
}

EstimateReport estimate_L1(int n, int k, uint64_t samples_per_stratum, Rng& rng,
                           const EstimateOptions& opt) {
  check_args(n, k);
  if (samples_per_stratum == 0) throw std::invalid_argument("need at least one sample per stratum");
  const int edges = n * (n - 1) / 2;
  const mpz_class nf = factorial(n);
  auto strata = legal_strata(n, [&](int) { return samples_per_stratum; });
  const uint64_t base = rng();
  EstimateReport rep;
  rep.method = "L1";
  rep.n = n;
  rep.k = k;
  run_strata(rep.strata, strata, opt.threads, [&](const Stratum& s) {
    Rng local = stratum_rng(base, s);
    const mpz_class labeled = binomial(edges, s.r) * binomial(edges - s.r, s.g);
    // Repeated labeled colorings are common on small boards.
    std::unordered_map<uint64_t, mpz_class> orbit_cache;
    const bool cacheable = edges <= 40;
    StratumEstimate out;
    out.r = s.r;
    out.g = s.g;
    out.samples = s.samples;
    if (k > n) {
      // Every coloring qualifies; the stratum total is known.
      out.hits = s.samples;
      out.mean = count_colorings(n, s.r, s.g);
      return out;
    }
    mpq_class sum = 0;
    Welford w;
    for (uint64_t i = 0; i < s.samples; ++i) {
      ColoredPosition p = sample_coloring(n, s.r, s.g, local);
      if (!mono_free(p, k)) {
        w.add(0.0);
        continue;
      }
      ++out.hits;
      mpz_class orbit;
      uint64_t code = cacheable ? encode_position64(p) : 0;
      auto it = cacheable ? orbit_cache.find(code) : orbit_cache.end();
      if (it != orbit_cache.end()) {
        orbit = it->second;
      } else {
        orbit = nf / automorphism_group_order(p, opt.automorphism_budget);
        if (cacheable && orbit_cache.size() < (1u << 20)) orbit_cache.emplace(code, orbit);
      }
      mpq_class x(labeled, orbit);
      x.canonicalize();
      sum += x;
      w.add(x.get_d());
    }
    out.mean = sum / mpq_class(mpz_class(static_cast<unsigned long>(s.samples)));
    out.variance = w.sample_variance() / static_cast<double>(s.samples);
    return out;
  });
  finish(rep);
  return rep;
}

EstimateReport estimate_L2(int n, int k, const SampleSchedule& schedule, Rng& rng,
                           const EstimateOptions& opt) {
  check_args(n, k);
  const int edges = n * (n - 1) / 2;
  auto strata = legal_strata(n, [&](int s) { return schedule(s, edges); });
  for (const auto& s : strata)
    if (s.samples == 0) throw std::invalid_argument("schedule gives an empty stratum");
  const uint64_t base = rng();
  const BivariatePolynomial& counts = coloring_polynomial(n);
  EstimateReport rep;
  rep.method = "L2";
  rep.n = n;
  rep.k = k;
  run_strata(rep.strata, strata, opt.threads, [&](const Stratum& s) {
    Rng local = stratum_rng(base, s);
    StratumEstimate out;
    out.r = s.r;
    out.g = s.g;
    out.samples = s.samples;
    for (uint64_t i = 0; i < s.samples; ++i) out.hits += mono_free(sample_coloring(n, s.r, s.g, local), k);
    const mpz_class& classes = counts.at(s.r, s.g);
    out.mean = mpq_class(classes * mpz_class(static_cast<unsigned long>(out.hits)),
                         mpz_class(static_cast<unsigned long>(s.samples)));
    out.mean.canonicalize();
    double m = static_cast<double>(s.samples);
    double p = static_cast<double>(out.hits) / m;
    double sv = s.samples > 1 ? p * (1.0 - p) * m / (m - 1.0) : 0.0;
    double c = classes.get_d();
    out.variance = c * c * sv / m;
    return out;
  });
  finish(rep);
  return rep;
}

}  // namespace ramsey
