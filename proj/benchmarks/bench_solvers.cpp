#include <benchmark/benchmark.h>

#include "sfsel/approx.hpp"
#include "sfsel/hierarchy.hpp"
#include "sfsel/instances.hpp"
#include "sfsel/oracle.hpp"
#include "sfsel/solve.hpp"

namespace {

void BM_PotentialSolve(benchmark::State& state) {
    // Tree-shaped instances keep every component coverable.
    sfsel::RandomParams params;
    params.n = static_cast<int>(state.range(0));
    params.cost_density = 0.5;
    params.max_scc_size = 1;
    auto [sys, costs] = sfsel::random_instance(sfsel::InstanceKind::Hierarchy, params, 9);
    sfsel::CondensedGraph cg = sfsel::condense(sys, costs);
    auto cycles = sfsel::cycles_of(cg, 1000000);
    auto ec = sfsel::edge_costs(cg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfsel::potential_solve(cycles, ec, {}));
    }
}
BENCHMARK(BM_PotentialSolve)->Arg(8)->Arg(12)->Arg(16);

void BM_HierarchicalSolve(benchmark::State& state) {
    sfsel::RandomParams params;
    params.n = static_cast<int>(state.range(0));
    params.cost_density = 0.5;
    auto [sys, costs] = sfsel::random_instance(sfsel::InstanceKind::Hierarchy, params, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfsel::hierarchical_solve(sys, costs));
    }
}
BENCHMARK(BM_HierarchicalSolve)->Arg(16)->Arg(64)->Arg(256);

void BM_BruteForceOracle(benchmark::State& state) {
    sfsel::RandomParams params;
    params.n = 6;
    params.cost_density = 0.5;
    params.max_finite_entries = static_cast<int>(state.range(0));
    auto [sys, costs] = sfsel::random_instance(sfsel::InstanceKind::SelfDamped, params, 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sfsel::brute_force_problem1(sys, costs));
    }
}
BENCHMARK(BM_BruteForceOracle)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
