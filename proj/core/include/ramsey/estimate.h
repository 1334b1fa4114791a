#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ramsey/graph.h"

namespace ramsey {

using Rng = std::mt19937_64;

// Uniform over the labeled colorings of K_n with exactly r red and g green
// edges.
ColoredPosition sample_coloring(int n, int r, int g, Rng& rng);

// 1 if neither color class contains K_k, else 0.
int mono_free(const ColoredPosition& p, int k);

struct StratumEstimate {
  int r = 0;
  int g = 0;
  uint64_t samples = 0;
  uint64_t hits = 0;
  mpq_class mean;          // stratum contribution to the estimate
  double variance = 0.0;   // estimated variance of mean
};

struct EstimateReport {
  std::string method;
  int n = 0;
  int k = 0;
  mpq_class estimate;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double std_error = 0.0;
  uint64_t total_samples = 0;
  std::vector<StratumEstimate> strata;

  double estimate_double() const { return estimate.get_d(); }
};

inline constexpr double kCiZ = 2.576;

// Samples per stratum for L2 as a function of r + g and C(n,2).
using SampleSchedule = std::function<uint64_t(int colored, int edges)>;
// 100 below 40 colored edges, then linear up to 50000 at 153.
uint64_t default_l2_schedule(int colored, int edges);

struct EstimateOptions {
  // Worker threads over strata; results do not depend on it.
  int threads = 1;
  uint64_t automorphism_budget = 50'000'000;
};

// Mean of labeled-count / orbit-size * T per stratum, summed over r = g or
// r = g + 1. Throws BudgetExceeded if an orbit computation gives up.
EstimateReport estimate_L1(int n, int k, uint64_t samples_per_stratum, Rng& rng,
                           const EstimateOptions& opt = {});

// Hit fraction of T per stratum times the exact class count.
EstimateReport estimate_L2(int n, int k, const SampleSchedule& schedule, Rng& rng,
                           const EstimateOptions& opt = {});

}  // namespace ramsey
