#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sfsel/graph.hpp"
#include "sfsel/system.hpp"

namespace sfsel {

struct EminEdge {
    FeedbackLink link;
    double cost = 0.0;
};

// SCC condensation of the state digraph together with, per ordered component
// pair (a, b), the cheapest feasible feedback edge entering a and leaving b.
struct CondensedGraph {
    SccDecomposition scc;
    std::vector<int> input_scc;   // input k+1 enters component input_scc[k]
    std::vector<int> output_scc;  // output k+1 leaves component output_scc[k]
    std::map<std::pair<int, int>, EminEdge> e_min;

    int components() const { return scc.count(); }
};

// A cycle of the reduced digraph, recorded as the component ids it visits
// and the feedback links it crosses.
struct Cycle {
    std::vector<int> nodes;            // component ids, sorted ascending
    std::vector<FeedbackLink> edges;   // sorted ascending

    friend bool operator==(const Cycle&, const Cycle&) = default;
};

// Requires a perfect matching in B(A); throws AssumptionViolated otherwise.
// Ties inside an edge group break by smallest (input, output).
CondensedGraph condense(const StructuredSystem& sys, const CostMatrix& costs);

// The reduced digraph itself: component nodes, input/output nodes, DAG edges
// and the chosen representative feedback edges.
Digraph reduced_digraph(const CondensedGraph& cg);

std::string reduced_digraph_dot(const CondensedGraph& cg);

// Every simple cycle of the reduced digraph as (nodes : edges), in the
// deterministic order of the underlying cycle enumeration.
std::vector<Cycle> cycles_of(const CondensedGraph& cg, long cap);

// Cycle merging: cycles with identical edge sets collapse into one cycle
// carrying the union of their node sets, and a cycle whose edge set strictly
// contains another's absorbs that cycle's node set. Input order preserved.
std::vector<Cycle> merge_cycles(const std::vector<Cycle>& cycles);

// Edge costs keyed by link, as the solvers consume them.
std::map<FeedbackLink, double> edge_costs(const CondensedGraph& cg);

}  // namespace sfsel
