#include <benchmark/benchmark.h>

#include <random>

#include "ramsey/canonical.h"
#include "ramsey/polya.h"
#include "ramsey/solver.h"
#include "ramsey/witness.h"

using namespace ramsey;

namespace {

ColoredPosition random_position(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  ColoredPosition p(complete_board(n));
  for (int e = 0; e < p.edge_count(); ++e) p.set_color(e, static_cast<Color>(rng() % 3));
  return p;
}

void BM_Canonicalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<ColoredPosition> ps;
  for (int i = 0; i < 64; ++i) ps.push_back(random_position(n, i));
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(ps[i++ % ps.size()]).code);
}
BENCHMARK(BM_Canonicalize)->Arg(6)->Arg(9)->Arg(12)->Arg(18);

void BM_SolveSim(benchmark::State& state) {
  GameEngine eng(sim_spec());
  for (auto _ : state) benchmark::DoNotOptimize(solve(eng).size());
}
BENCHMARK(BM_SolveSim)->Unit(benchmark::kMillisecond);

void BM_CountColorings18(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_colorings(18, 77, 76));
}
BENCHMARK(BM_CountColorings18)->Unit(benchmark::kMillisecond);

// The doubled K17 witness has a large automorphism group.
void BM_AutomorphismsK18(benchmark::State& state) {
  ColoredPosition p = extend_by_duplicate(paley_coloring(17), 0);
  for (auto _ : state) benchmark::DoNotOptimize(automorphism_group_order(p));
}
BENCHMARK(BM_AutomorphismsK18)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
