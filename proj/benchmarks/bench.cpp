#include <benchmark/benchmark.h>

#include "binrank/boolfn.hpp"
#include "binrank/gadget.hpp"
#include "binrank/graph.hpp"
#include "binrank/matrix.hpp"
#include "binrank/rank.hpp"
#include "binrank/rng.hpp"
#include "binrank/transform.hpp"

using namespace binrank;

namespace {

BoolMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  BoolMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, rng.coin());
  return m;
}

Graph random_graph(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.below(100) < 40) g.add_edge(u, v);
  return g;
}

void BM_RealRank(benchmark::State& state) {
  const BoolMatrix m = random_regular(static_cast<std::size_t>(state.range(0)), 4, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(real_rank(m));
  }
}
BENCHMARK(BM_RealRank)->Arg(16)->Arg(32)->Arg(64);

void BM_BinaryRank(benchmark::State& state) {
  const BoolMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(binary_rank(m).value);
  }
}
BENCHMARK(BM_BinaryRank)->Arg(5)->Arg(6)->Arg(7);

void BM_BooleanRank(benchmark::State& state) {
  const BoolMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(boolean_rank(m).value);
  }
}
BENCHMARK(BM_BooleanRank)->Arg(6)->Arg(8);

void BM_Chromatic(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chromatic_number(g).chi);
  }
}
BENCHMARK(BM_Chromatic)->Arg(12)->Arg(16)->Arg(20);

void BM_BicliquePartition(benchmark::State& state) {
  const Graph g = Graph::complete(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bp_exact(g).value);
  }
}
BENCHMARK(BM_BicliquePartition)->Arg(4)->Arg(5);

void BM_DiscrepancyExact(benchmark::State& state) {
  const Gadget g = gadget_gl(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrepancy_exact(g));
  }
}
BENCHMARK(BM_DiscrepancyExact)->Arg(3)->Arg(4);

void BM_Compose(benchmark::State& state) {
  const TruthTable f = tt_xor(3);
  const Gadget g = gadget_gl(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(f, g).ones_count());
  }
}
BENCHMARK(BM_Compose)->Arg(2)->Arg(3);

void BM_Transform(benchmark::State& state) {
  const BoolMatrix m = random_regular(static_cast<std::size_t>(state.range(0)), 2, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(transform(m).bp_certificate.bicliques.size());
  }
}
BENCHMARK(BM_Transform)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
