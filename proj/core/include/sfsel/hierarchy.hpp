#pragma once

#include <string>
#include <vector>

#include "sfsel/graph.hpp"
#include "sfsel/sfm.hpp"
#include "sfsel/system.hpp"

namespace sfsel {

// SCC condensation that forms an arborescence (or a forest of them), layered
// by distance from the root. Component ids follow the canonical SCC order.
struct Hierarchy {
    SccDecomposition scc;
    std::vector<int> parent;                     // -1 for roots
    std::vector<std::vector<int>> children;      // sorted
    std::vector<int> layer;                      // 1-based layer per component
    std::vector<std::vector<int>> layers;        // layers[f-1] = components in L_f
    std::vector<int> input_comp;                 // input k+1 -> component
    std::vector<int> output_comp;                // output k+1 -> component
    std::vector<std::vector<int>> anc_inputs;    // U: inputs on ancestors (incl. self)
    std::vector<std::vector<int>> desc_outputs;  // Y: outputs on descendants (incl. self)
    std::vector<std::vector<FeedbackLink>> covering;  // A per component, sorted

    int components() const { return scc.count(); }
    int depth() const { return static_cast<int>(layers.size()); }
};

// Layers, ancestor-input and descendant-output sets, and per-component
// covering edges. Requires the back-edge structure and a perfect matching in
// B(A) (AssumptionViolated), and a unique parent per non-root component
// (NotHierarchical).
Hierarchy build_hierarchy(const StructuredSystem& sys, const CostMatrix& costs);

// Roots of the maximal subtrees of Tree(node) left uncovered when `edge`
// covers exactly the components on the unique directed path from the SCC of
// its input to the SCC of its output.
std::vector<int> forest_of(const Hierarchy& h, int node, const FeedbackLink& edge);

struct DpCandidate {
    FeedbackLink edge;
    double edge_cost = 0.0;
    double forest_cost = 0.0;
    std::vector<int> forest_roots;
};

struct DpCell {
    int node = 0;
    double cost = 0.0;
    std::vector<FeedbackLink> edges;     // optimal cover of Tree(node)
    std::vector<DpCandidate> candidates; // the full minimization table
};

struct HierarchicalOutcome {
    SolveReport report;
    Hierarchy hierarchy;
    std::vector<DpCell> table;  // indexed by component id
};

// Bottom-up dynamic program over layers; exact. Throws Infeasible when some
// component has no covering edge at all.
HierarchicalOutcome hierarchical_solve(const StructuredSystem& sys,
                                       const CostMatrix& costs);

std::string dp_table_to_text(const HierarchicalOutcome& outcome);

}  // namespace sfsel
