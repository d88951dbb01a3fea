#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sfsel/approx.hpp"
#include "sfsel/reduction.hpp"
#include "sfsel/system.hpp"

namespace sfsel {

struct OracleBudget {
    int max_feasible_edges = 20;
    std::size_t max_cover_enumeration = 200000;
    double time_limit_seconds = 0.0;  // 0 = unlimited
};

// Exhaustive minimum over all feasible feedback subsets passing the full
// fixed-mode check (both conditions, so systems without a perfect matching in
// B(A) are handled too). Subsets are visited in ascending (cost, edge-index)
// order; feasibility is monotone in the edge set, so the first feasible
// subset is optimal. Returns feasible=false when nothing works.
SolveReport brute_force_problem1(const StructuredSystem& sys,
                                 const CostMatrix& costs,
                                 const OracleBudget& budget = {});

struct CoverSolution {
    std::set<FeedbackLink> edges;
    double cost = 0.0;
};

// Minimum-cost edge subset such that every node lies in a cycle whose edges
// are all selected. The node universe defaults to the union of the cycles'
// node sets; pass the instance's full component list to also account for
// components on no cycle. Empty optional when some node is in no cycle.
std::optional<CoverSolution> brute_force_problem2(const std::vector<Cycle>& cycles,
                                                  const EdgeCostMap& costs,
                                                  const OracleBudget& budget = {},
                                                  const std::vector<int>& universe = {});

struct CoverMultiplicity {
    std::vector<int> cycle_indices;  // sorted indices into the input list
    int k1 = 0;
    int k2 = 0;
};

struct MultiplicityReport {
    double optimum = 0.0;
    int k1_tilde = 0;
    int k2_tilde = 0;
    std::vector<CoverMultiplicity> c_set;  // all minimal optimal covers
    int k1_witness = -1;  // index into c_set achieving k1_tilde
    int k2_witness = -1;
};

// Enumerates every inclusion-minimal cycle set whose node union is the whole
// node set and whose edge-union cost equals the optimum, then minimizes the
// first and second highest edge multiplicities over them.
MultiplicityReport multiplicities(const std::vector<Cycle>& cycles,
                                  const EdgeCostMap& costs,
                                  const OracleBudget& budget = {});

std::string multiplicity_report_to_json(const MultiplicityReport& report);

}  // namespace sfsel
