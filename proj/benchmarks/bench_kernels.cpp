#include <benchmark/benchmark.h>

#include <random>

#include "sfsel/graph.hpp"
#include "sfsel/instances.hpp"
#include "sfsel/reduction.hpp"

namespace {

sfsel::Digraph random_digraph(int n, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    sfsel::Digraph d;
    for (int i = 1; i <= n; ++i) d.add_node({sfsel::NodeKind::State, i});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) d.add_edge(i, j);
        }
    }
    return d;
}

void BM_SccCondense(benchmark::State& state) {
    sfsel::Digraph d = random_digraph(static_cast<int>(state.range(0)), 0.05, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfsel::scc_condense(d));
    }
}
BENCHMARK(BM_SccCondense)->Arg(64)->Arg(256)->Arg(1024);

void BM_MaxMatching(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    sfsel::RandomParams params;
    params.n = n;
    params.edge_density = 0.1;
    auto [sys, costs] = sfsel::random_instance(sfsel::InstanceKind::SelfDamped, params, 5);
    sfsel::Bipartite b = sfsel::state_bipartite(sys);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfsel::max_matching(b));
    }
    (void)costs;
}
BENCHMARK(BM_MaxMatching)->Arg(64)->Arg(256)->Arg(1024);

void BM_EnumerateCycles(benchmark::State& state) {
    // Sparse enough that the cycle count stays moderate.
    sfsel::Digraph d = random_digraph(static_cast<int>(state.range(0)), 0.08, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfsel::enumerate_cycles(d, 1000000));
    }
}
BENCHMARK(BM_EnumerateCycles)->Arg(16)->Arg(24)->Arg(32);

void BM_Condense(benchmark::State& state) {
    sfsel::RandomParams params;
    params.n = static_cast<int>(state.range(0));
    params.edge_density = 0.08;
    params.cost_density = 0.3;
    auto [sys, costs] = sfsel::random_instance(sfsel::InstanceKind::SelfDamped, params, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfsel::condense(sys, costs));
    }
}
BENCHMARK(BM_Condense)->Arg(32)->Arg(128)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
