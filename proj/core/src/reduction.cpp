#include "sfsel/reduction.hpp"

#include <algorithm>
#include <sstream>

namespace sfsel {

CondensedGraph condense(const StructuredSystem& sys, const CostMatrix& costs) {
    MatchingResult pm = max_matching(state_bipartite(sys));
    if (!pm.perfect) {
        throw Error(ErrorCode::AssumptionViolated,
                    "state bipartite graph has no perfect matching "
                    "(disjoint cycles cannot span the states); use the oracle solver");
    }

    CondensedGraph cg;
    cg.scc = scc_condense(state_digraph(sys));
    for (int i = 1; i <= sys.num_inputs(); ++i) {
        cg.input_scc.push_back(cg.scc.component_of[sys.state_of_input(i) - 1]);
    }
    for (int j = 1; j <= sys.num_outputs(); ++j) {
        cg.output_scc.push_back(cg.scc.component_of[sys.state_of_output(j) - 1]);
    }

    // Cheapest representative per ordered component pair; ties break by the
    // smallest (input, output) pair, which map iteration order delivers.
    for (const auto& [key, cost] : costs.entries()) {
        const auto& [input, output] = key;
        int a = cg.input_scc.at(input - 1);
        int b = cg.output_scc.at(output - 1);
        auto it = cg.e_min.find({a, b});
        if (it == cg.e_min.end() || cost < it->second.cost) {
            cg.e_min[{a, b}] = {FeedbackLink{input, output}, cost};
        }
    }
    return cg;
}

namespace {

struct ReducedIds {
    int components = 0;
    int inputs = 0;
    int outputs = 0;
    int scc_node(int c) const { return c; }
    int input_node(int i) const { return components + i - 1; }
    int output_node(int j) const { return components + inputs + j - 1; }
};

ReducedIds layout(const CondensedGraph& cg) {
    return {cg.components(), static_cast<int>(cg.input_scc.size()),
            static_cast<int>(cg.output_scc.size())};
}

Digraph build_reduced(const CondensedGraph& cg) {
    ReducedIds ids = layout(cg);
    Digraph d;
    for (int c = 0; c < ids.components; ++c) d.add_node({NodeKind::Scc, c + 1});
    for (int i = 1; i <= ids.inputs; ++i) d.add_node({NodeKind::Input, i});
    for (int j = 1; j <= ids.outputs; ++j) d.add_node({NodeKind::Output, j});
    for (const auto& [a, b] : cg.scc.dag_edges) d.add_edge(ids.scc_node(a), ids.scc_node(b));
    for (int i = 1; i <= ids.inputs; ++i) {
        d.add_edge(ids.input_node(i), ids.scc_node(cg.input_scc[i - 1]));
    }
    for (int j = 1; j <= ids.outputs; ++j) {
        d.add_edge(ids.scc_node(cg.output_scc[j - 1]), ids.output_node(j));
    }
    for (const auto& [pair, edge] : cg.e_min) {
        d.add_edge(ids.output_node(edge.link.output), ids.input_node(edge.link.input));
        (void)pair;
    }
    return d;
}

}  // namespace

Digraph reduced_digraph(const CondensedGraph& cg) { return build_reduced(cg); }

std::string reduced_digraph_dot(const CondensedGraph& cg) {
    ReducedIds ids = layout(cg);
    Digraph d = build_reduced(cg);
    std::map<std::pair<int, int>, double> cost_by_edge;
    for (const auto& [pair, edge] : cg.e_min) {
        cost_by_edge[{ids.output_node(edge.link.output),
                      ids.input_node(edge.link.input)}] = edge.cost;
        (void)pair;
    }
    return d.to_dot([&](int from, int to) -> std::string {
        auto it = cost_by_edge.find({from, to});
        if (it == cost_by_edge.end()) return "";
        std::ostringstream os;
        os << it->second;
        return os.str();
    });
}

std::vector<Cycle> cycles_of(const CondensedGraph& cg, long cap) {
    ReducedIds ids = layout(cg);
    Digraph d = build_reduced(cg);
    std::vector<Cycle> out;
    for (const auto& nodes : enumerate_cycles(d, cap)) {
        Cycle cycle;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            int v = nodes[k];
            int w = nodes[(k + 1) % nodes.size()];
            if (d.label(v).kind == NodeKind::Scc) {
                cycle.nodes.push_back(d.label(v).index - 1);
            }
            if (d.label(v).kind == NodeKind::Output &&
                d.label(w).kind == NodeKind::Input) {
                cycle.edges.push_back({d.label(w).index, d.label(v).index});
            }
        }
        std::sort(cycle.nodes.begin(), cycle.nodes.end());
        std::sort(cycle.edges.begin(), cycle.edges.end());
        out.push_back(std::move(cycle));
    }
    (void)ids;
    return out;
}

std::vector<Cycle> merge_cycles(const std::vector<Cycle>& cycles) {
    // Collapse identical edge sets first, keeping first-occurrence order.
    std::vector<Cycle> merged;
    std::map<std::vector<FeedbackLink>, std::size_t> by_edges;
    for (const Cycle& c : cycles) {
        auto it = by_edges.find(c.edges);
        if (it == by_edges.end()) {
            by_edges[c.edges] = merged.size();
            merged.push_back(c);
        } else {
            auto& nodes = merged[it->second].nodes;
            nodes.insert(nodes.end(), c.nodes.begin(), c.nodes.end());
            std::sort(nodes.begin(), nodes.end());
            nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        }
    }
    // A strict superset absorbs the subset's nodes; one pass reaches the
    // fixed point since edge sets never change.
    for (Cycle& big : merged) {
        for (const Cycle& small : merged) {
            if (&big == &small) continue;
            if (small.edges.size() >= big.edges.size()) continue;
            if (!std::includes(big.edges.begin(), big.edges.end(),
                               small.edges.begin(), small.edges.end())) {
                continue;
            }
            std::vector<int> merged_nodes;
            std::set_union(big.nodes.begin(), big.nodes.end(), small.nodes.begin(),
                           small.nodes.end(), std::back_inserter(merged_nodes));
            big.nodes = std::move(merged_nodes);
        }
    }
    return merged;
}

std::map<FeedbackLink, double> edge_costs(const CondensedGraph& cg) {
    std::map<FeedbackLink, double> out;
    for (const auto& [pair, edge] : cg.e_min) {
        out[edge.link] = edge.cost;
        (void)pair;
    }
    return out;
}

}  // namespace sfsel
