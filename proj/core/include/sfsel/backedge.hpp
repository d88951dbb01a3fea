#pragma once

#include <string>
#include <vector>

#include "sfsel/sfm.hpp"
#include "sfsel/system.hpp"

namespace sfsel {

// Weighted set cover instance produced from a back-edge system. Set d keeps
// its originating feedback edge so covers map back to feedback matrices.
struct SetCoverInstance {
    int universe_size = 0;                   // elements are states 1..n
    std::vector<std::vector<int>> sets;      // sorted state ids
    std::vector<double> weights;
    std::vector<FeedbackLink> provenance;    // set index -> feedback edge

    std::size_t num_sets() const { return sets.size(); }
};

std::string set_cover_to_json(const SetCoverInstance& inst);

// Back-edge feedback structure: every finite cost entry (i, j) must have a
// directed path from u_i to y_j in D(A,B,C). Returns the violating links,
// empty when the assumption holds.
std::vector<FeedbackLink> check_backedge(const StructuredSystem& sys,
                                         const CostMatrix& costs);

// One set per feasible edge e = (y_j, u_i), holding exactly the states of the
// SCC that e closes in D(A,B,C) + e, weighted by the edge cost. Requires the
// back-edge structure and a perfect matching in B(A); throws
// AssumptionViolated naming whichever failed.
SetCoverInstance reduce_to_set_cover(const StructuredSystem& sys,
                                     const CostMatrix& costs);

// Chvatal greedy: repeatedly pick the set minimizing weight per newly covered
// element, ties by lowest set index. Throws Uncoverable listing the elements
// no set contains.
std::vector<int> greedy_set_cover(const SetCoverInstance& inst);

struct BackedgeOptions {
    // Drop cost entries violating the back-edge structure instead of
    // refusing; the dropped links are reported in `projected`.
    bool project = false;
};

struct BackedgeOutcome {
    SolveReport report;
    SetCoverInstance instance;
    std::vector<int> chosen_sets;
    std::vector<FeedbackLink> projected;
};

BackedgeOutcome backedge_solve(const StructuredSystem& sys,
                               const CostMatrix& costs,
                               const BackedgeOptions& options = {});

}  // namespace sfsel
