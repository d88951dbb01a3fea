#include <doctest.h>

#include <cmath>
#include <random>

#include "sfsel/approx.hpp"
#include "sfsel/instances.hpp"
#include "sfsel/oracle.hpp"
#include "sfsel/solve.hpp"
#include "test_support.hpp"

using namespace sfsel;

namespace {

// The nine cycles of the 8-component worked instance, indexed so tie-breaks
// are observable. Unit edge costs throughout.
std::vector<Cycle> worked_cycles() {
    return {
        {{0, 1, 2}, {{1, 2}, {2, 3}}},
        {{0, 1, 3}, {{1, 2}, {2, 4}}},
        {{0, 1, 4}, {{1, 2}, {5, 1}}},
        {{4, 5, 7}, {{6, 5}, {8, 6}}},
        {{4, 5, 6}, {{5, 7}, {6, 5}}},
        {{2}, {{3, 3}}},
        {{5}, {{6, 6}}},
        {{6}, {{7, 7}}},
        {{7}, {{8, 8}}},
    };
}

EdgeCostMap worked_costs() {
    EdgeCostMap costs;
    for (const Cycle& c : worked_cycles()) {
        for (const FeedbackLink& e : c.edges) costs[e] = 1.0;
    }
    return costs;
}

std::vector<int> all_nodes(const std::vector<Cycle>& cycles) {
    std::set<int> nodes;
    for (const Cycle& c : cycles) nodes.insert(c.nodes.begin(), c.nodes.end());
    return {nodes.begin(), nodes.end()};
}

}  // namespace

TEST_CASE("greedy picks the cheapest price and breaks ties low") {
    auto cycles = worked_cycles();
    auto costs = worked_costs();
    GreedyResult res = greedy(cycles, costs, all_nodes(cycles), {});
    REQUIRE_FALSE(res.rounds.empty());
    CHECK(res.rounds[0].selected_cycle == 0);  // three cycles tie at 2/3
    CHECK(res.rounds[0].price == doctest::Approx(2.0 / 3.0));
    // The cover is complete.
    std::set<int> covered;
    for (const auto& r : res.rounds) {
        covered.insert(r.newly_covered.begin(), r.newly_covered.end());
    }
    CHECK(covered.size() == 8);
}

TEST_CASE("greedy on a single all-covering cycle returns its edges") {
    std::vector<Cycle> cycles{{{0, 1, 2}, {{1, 1}, {2, 2}}}};
    EdgeCostMap costs{{{1, 1}, 2.0}, {{2, 2}, 3.0}};
    GreedyResult res = greedy(cycles, costs, {0, 1, 2}, {});
    CHECK(res.edges == std::set<FeedbackLink>{{1, 1}, {2, 2}});
    CHECK(res.cost == 5.0);
}

TEST_CASE("free edges cost nothing and are never selected") {
    auto cycles = worked_cycles();
    auto costs = worked_costs();
    std::set<FeedbackLink> free{{1, 2}, {2, 3}};

    // With the first cycle's edges free, covering one leftover node costs
    // exactly the one residual edge.
    GreedyResult only3 = greedy(cycles, costs, {3}, free);
    CHECK(only3.cost == 1.0);
    CHECK(only3.edges == std::set<FeedbackLink>{{2, 4}});
    GreedyResult only4 = greedy(cycles, costs, {4}, free);
    CHECK(only4.cost == 1.0);
    CHECK(only4.edges == std::set<FeedbackLink>{{5, 1}});

    GreedyResult full = greedy(cycles, costs, all_nodes(cycles), free);
    CHECK(full.rounds[0].price == 0.0);  // the freed cycle goes first
    for (const FeedbackLink& e : free) CHECK(full.edges.count(e) == 0);
}

TEST_CASE("greedy reports uncoverable nodes") {
    std::vector<Cycle> cycles{{{0}, {{1, 1}}}};
    EdgeCostMap costs{{{1, 1}, 1.0}};
    CHECK_THROWS_AS(greedy(cycles, costs, {0, 5}, {}), Error);
    try {
        greedy(cycles, costs, {0, 5}, {});
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::Uncoverable);
        CHECK(err.nodes == std::vector<int>{5});
    }
}

TEST_CASE("potential solver covers the worked instance within its bound") {
    // Pass-through components dropped from the two right-side cycles, which
    // prices the left block through its hub cycle.
    std::vector<Cycle> cycles = worked_cycles();
    cycles[3].nodes = {5, 7};
    cycles[4].nodes = {5, 6};
    auto costs = worked_costs();

    auto opt = brute_force_problem2(cycles, costs);
    REQUIRE(opt.has_value());
    CHECK(opt->cost == 7.0);
    auto report = multiplicities(cycles, costs);
    CHECK(report.k2_tilde == 1);

    PotentialResult res = potential_solve(cycles, costs, {});
    double bound = report.k2_tilde * (1.0 + std::log(8.0)) * opt->cost;
    CHECK(res.cost >= opt->cost);
    CHECK(res.cost <= bound + 1e-9);
    CHECK(res.cost <= res.first_iteration_cost + 1e-9);
}

TEST_CASE("potential solver degenerate shapes") {
    SUBCASE("single cycle") {
        std::vector<Cycle> cycles{{{0, 1}, {{1, 1}, {2, 2}}}};
        EdgeCostMap costs{{{1, 1}, 2.0}, {{2, 2}, 3.0}};
        PotentialResult res = potential_solve(cycles, costs, {});
        CHECK(res.edges == std::set<FeedbackLink>{{1, 1}, {2, 2}});
        CHECK(res.cost == 5.0);
        CHECK(res.iterations == 1);
        CHECK(res.first_iteration_cost == 5.0);
    }
    SUBCASE("two disjoint cycles take both edge sets") {
        std::vector<Cycle> cycles{{{0}, {{1, 1}}}, {{1}, {{2, 2}}}};
        EdgeCostMap costs{{{1, 1}, 4.0}, {{2, 2}, 1.0}};
        PotentialResult res = potential_solve(cycles, costs, {});
        CHECK(res.edges == std::set<FeedbackLink>{{1, 1}, {2, 2}});
        CHECK(res.cost == 5.0);
    }
}

TEST_CASE("greedy cost is charge-bounded by the first multiplicity constant") {
    std::mt19937_64 rng(44);
    int audited = 0;
    while (audited < 60) {
        RandomParams params;
        params.n = 3 + static_cast<int>(rng() % 5);
        params.cost_density = 0.6;
        params.max_finite_entries = 12;
        auto [sys, costs] = random_instance(InstanceKind::SelfDamped, params, rng());
        CondensedGraph cg = condense(sys, costs);
        auto cycles = cycles_of(cg, 100000);
        EdgeCostMap ec = edge_costs(cg);
        std::set<int> on_cycle;
        for (const Cycle& c : cycles) on_cycle.insert(c.nodes.begin(), c.nodes.end());
        if (static_cast<int>(on_cycle.size()) < cg.components()) continue;
        ++audited;
        GreedyResult res =
            greedy(cycles, ec, {on_cycle.begin(), on_cycle.end()}, {});
        MultiplicityReport mult = multiplicities(cycles, ec);
        double bound = mult.k1_tilde *
                       (1.0 + std::log(static_cast<double>(cg.components()))) *
                       mult.optimum;
        CHECK(res.cost <= bound + 1e-9);
        CHECK(res.cost >= mult.optimum - 1e-9);
    }
}

TEST_CASE("potential solver is deterministic") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        RandomParams params;
        params.n = 3 + static_cast<int>(rng() % 4);
        params.cost_density = 0.5;
        params.max_finite_entries = 10;
        auto [sys, costs] = random_instance(InstanceKind::SelfDamped, params, rng());
        SolveOptions options;
        options.algo = Algo::Potential;
        SolveOutcome a = solve(sys, costs, options);
        SolveOutcome b = solve(sys, costs, options);
        CHECK(a.report.feasible == b.report.feasible);
        if (a.report.feasible) {
            CHECK(*a.report.solution == *b.report.solution);
            CHECK(report_to_json(a) == report_to_json(b));
        }
    }
}

TEST_CASE("final solution never exceeds the first feasible completion") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        RandomParams params;
        params.n = 3 + static_cast<int>(rng() % 5);
        params.cost_density = 0.5;
        params.max_finite_entries = 12;
        auto [sys, costs] = random_instance(InstanceKind::SelfDamped, params, rng());
        CondensedGraph cg = condense(sys, costs);
        auto cycles = cycles_of(cg, 100000);
        std::set<int> on_cycle;
        for (const Cycle& c : cycles) on_cycle.insert(c.nodes.begin(), c.nodes.end());
        if (static_cast<int>(on_cycle.size()) < cg.components()) continue;
        PotentialResult res = potential_solve(cycles, edge_costs(cg), {});
        CHECK(res.cost <= res.first_iteration_cost + 1e-9);
    }
}

TEST_CASE("potential output always solves the cycle-cover predicate") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        RandomParams params;
        params.n = 3 + static_cast<int>(rng() % 5);
        params.cost_density = 0.5;
        params.max_finite_entries = 12;
        auto [sys, costs] = random_instance(InstanceKind::SelfDamped, params, rng());
        CondensedGraph cg = condense(sys, costs);
        auto cycles = cycles_of(cg, 100000);
        std::set<int> on_cycle;
        for (const Cycle& c : cycles) on_cycle.insert(c.nodes.begin(), c.nodes.end());
        if (static_cast<int>(on_cycle.size()) < cg.components()) continue;
        PotentialResult res = potential_solve(cycles, edge_costs(cg), {});

        // Re-run cycle membership: every component must sit on a cycle whose
        // edges were all selected.
        std::set<int> covered;
        for (const Cycle& c : cycles) {
            bool inside = true;
            for (const FeedbackLink& e : c.edges) inside = inside && res.edges.count(e);
            if (inside) covered.insert(c.nodes.begin(), c.nodes.end());
        }
        CHECK(static_cast<int>(covered.size()) == cg.components());
    }
}
