#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sfsel/reduction.hpp"
#include "sfsel/system.hpp"

namespace sfsel {

using EdgeCostMap = std::map<FeedbackLink, double>;

// One round of the price-driven selection loop, kept for --trace output.
struct GreedyRound {
    int selected_cycle = -1;
    double price = 0.0;
    std::vector<int> newly_covered;
};

struct GreedyResult {
    std::set<FeedbackLink> edges;
    double cost = 0.0;
    std::vector<GreedyRound> rounds;
};

// Covers `target` (component ids) by repeatedly selecting the cycle with the
// cheapest residual cost per residual node. Edges in `free_edges` are never
// selected and contribute nothing to residual costs. Ties break on the lowest
// cycle index. Throws Uncoverable when a target node lies in no cycle.
GreedyResult greedy(const std::vector<Cycle>& cycles,
                    const EdgeCostMap& costs,
                    const std::vector<int>& target,
                    const std::set<FeedbackLink>& free_edges);

struct PotentialIteration {
    std::vector<std::pair<int, double>> pots;  // (cycle index, potential)
    int selected_cycle = -1;
    double selected_pot = 0.0;
};

struct PotentialOptions {
    bool merge = true;   // run merge_cycles before solving
    bool trace = false;  // record per-iteration potential tables
};

struct PotentialResult {
    std::set<FeedbackLink> edges;
    double cost = 0.0;
    std::size_t iterations = 0;
    double first_iteration_cost = 0.0;  // cost of the first feasible completion
    std::vector<PotentialIteration> trace;
    std::vector<Cycle> solved_cycles;   // the (possibly merged) cycle list used
};

// Potential-function solver: each iteration evaluates, per candidate cycle,
// the cycle's residual edge cost plus the greedy completion cost of covering
// every remaining node with that cycle's edges made free, and selects the
// minimum. Throws Uncoverable when some node lies in no cycle.
PotentialResult potential_solve(const std::vector<Cycle>& cycles,
                                const EdgeCostMap& costs,
                                const PotentialOptions& options = {});

}  // namespace sfsel
