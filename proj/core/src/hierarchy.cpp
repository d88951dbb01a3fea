#include "sfsel/hierarchy.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "sfsel/backedge.hpp"

namespace sfsel {

Hierarchy build_hierarchy(const StructuredSystem& sys, const CostMatrix& costs) {
    if (!check_backedge(sys, costs).empty()) {
        throw Error(ErrorCode::AssumptionViolated,
                    "back-edge structure violated: some feasible link has no "
                    "input-to-output path");
    }
    if (!max_matching(state_bipartite(sys)).perfect) {
        throw Error(ErrorCode::AssumptionViolated,
                    "state bipartite graph has no perfect matching; "
                    "use the oracle solver");
    }

    Hierarchy h;
    h.scc = scc_condense(state_digraph(sys));
    const int ell = h.scc.count();
    h.parent.assign(ell, -1);
    h.children.assign(ell, {});
    for (const auto& [a, b] : h.scc.dag_edges) {
        if (h.parent[b] != -1 && h.parent[b] != a) {
            Error err(ErrorCode::NotHierarchical,
                      "component " + std::to_string(b + 1) + " has several parents");
            err.nodes = {h.parent[b] + 1, a + 1};
            throw err;
        }
        h.parent[b] = a;
        h.children[a].push_back(b);
    }

    h.layer.assign(ell, 0);
    std::function<int(int)> depth = [&](int c) -> int {
        if (h.layer[c] != 0) return h.layer[c];
        h.layer[c] = h.parent[c] == -1 ? 1 : depth(h.parent[c]) + 1;
        return h.layer[c];
    };
    int max_layer = 0;
    for (int c = 0; c < ell; ++c) max_layer = std::max(max_layer, depth(c));
    h.layers.assign(max_layer, {});
    for (int c = 0; c < ell; ++c) h.layers[h.layer[c] - 1].push_back(c);

    for (int i = 1; i <= sys.num_inputs(); ++i) {
        h.input_comp.push_back(h.scc.component_of[sys.state_of_input(i) - 1]);
    }
    for (int j = 1; j <= sys.num_outputs(); ++j) {
        h.output_comp.push_back(h.scc.component_of[sys.state_of_output(j) - 1]);
    }

    // Ancestor inputs and descendant outputs, both reflexive: an input on the
    // component itself can close a self cycle through its own output.
    std::vector<std::vector<int>> inputs_on(ell), outputs_on(ell);
    for (int i = 1; i <= sys.num_inputs(); ++i) inputs_on[h.input_comp[i - 1]].push_back(i);
    for (int j = 1; j <= sys.num_outputs(); ++j) outputs_on[h.output_comp[j - 1]].push_back(j);

    h.anc_inputs.assign(ell, {});
    h.desc_outputs.assign(ell, {});
    for (int c = 0; c < ell; ++c) {
        for (int a = c; a != -1; a = h.parent[a]) {
            h.anc_inputs[c].insert(h.anc_inputs[c].end(), inputs_on[a].begin(),
                                   inputs_on[a].end());
        }
        std::sort(h.anc_inputs[c].begin(), h.anc_inputs[c].end());
    }
    for (int f = max_layer; f >= 1; --f) {
        for (int c : h.layers[f - 1]) {
            auto& outs = h.desc_outputs[c];
            outs = outputs_on[c];
            for (int child : h.children[c]) {
                outs.insert(outs.end(), h.desc_outputs[child].begin(),
                            h.desc_outputs[child].end());
            }
            std::sort(outs.begin(), outs.end());
        }
    }

    h.covering.assign(ell, {});
    for (int c = 0; c < ell; ++c) {
        for (int input : h.anc_inputs[c]) {
            for (int output : h.desc_outputs[c]) {
                if (costs.feasible(input, output)) {
                    h.covering[c].push_back({input, output});
                }
            }
        }
        std::sort(h.covering[c].begin(), h.covering[c].end());
    }
    return h;
}

namespace {

// Components covered by an edge: the unique directed path from the input's
// component down to the output's component.
std::vector<char> covered_mask(const Hierarchy& h, const FeedbackLink& edge) {
    int top = h.input_comp.at(edge.input - 1);
    int bottom = h.output_comp.at(edge.output - 1);
    std::vector<char> mask(h.components(), 0);
    for (int c = bottom;; c = h.parent[c]) {
        mask[c] = 1;
        if (c == top) break;
        if (h.parent[c] == -1) {
            throw Error(ErrorCode::InvalidParams,
                        "edge " + to_string(edge) + " does not close a cycle");
        }
    }
    return mask;
}

std::vector<int> forest_roots(const Hierarchy& h, int node,
                              const std::vector<char>& on_path) {
    std::vector<int> roots;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int child : h.children[v]) {
            if (on_path[child]) {
                stack.push_back(child);
            } else if (on_path[v]) {
                roots.push_back(child);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

int position_in_layer(const Hierarchy& h, int c) {
    const auto& layer = h.layers[h.layer[c] - 1];
    return static_cast<int>(std::find(layer.begin(), layer.end(), c) - layer.begin()) + 1;
}

}  // namespace

std::vector<int> forest_of(const Hierarchy& h, int node, const FeedbackLink& edge) {
    const auto& covering = h.covering.at(node);
    if (!std::binary_search(covering.begin(), covering.end(), edge)) {
        throw Error(ErrorCode::InvalidParams,
                    "edge " + to_string(edge) + " does not cover component " +
                        std::to_string(node + 1));
    }
    return forest_roots(h, node, covered_mask(h, edge));
}

HierarchicalOutcome hierarchical_solve(const StructuredSystem& sys,
                                       const CostMatrix& costs) {
    auto started = std::chrono::steady_clock::now();
    HierarchicalOutcome out;
    out.report.solver = "hierarchical";
    out.hierarchy = build_hierarchy(sys, costs);
    const Hierarchy& h = out.hierarchy;
    const int ell = h.components();

    out.table.assign(ell, {});
    for (int c = 0; c < ell; ++c) out.table[c].node = c;

    for (int f = h.depth(); f >= 1; --f) {
        for (int c : h.layers[f - 1]) {
            DpCell& cell = out.table[c];
            if (h.covering[c].empty()) {
                // This component can never lie in a cycle, whatever we pay.
                out.report.feasible = false;
                return out;
            }
            bool first = true;
            for (const FeedbackLink& edge : h.covering[c]) {
                DpCandidate cand;
                cand.edge = edge;
                cand.edge_cost = *costs.cost(edge);
                cand.forest_roots = forest_roots(h, c, covered_mask(h, edge));
                for (int r : cand.forest_roots) cand.forest_cost += out.table[r].cost;

                double total = cand.edge_cost + cand.forest_cost;
                if (first || total < cell.cost) {
                    first = false;
                    cell.cost = total;
                    cell.edges.clear();
                    cell.edges.push_back(edge);
                    for (int r : cand.forest_roots) {
                        cell.edges.insert(cell.edges.end(), out.table[r].edges.begin(),
                                          out.table[r].edges.end());
                    }
                    std::sort(cell.edges.begin(), cell.edges.end());
                }
                cell.candidates.push_back(std::move(cand));
            }
        }
    }

    FeedbackSet fs;
    double total = 0.0;
    for (int c = 0; c < ell; ++c) {
        if (h.parent[c] == -1) {
            fs.insert(out.table[c].edges.begin(), out.table[c].edges.end());
            total += out.table[c].cost;
        }
    }
    out.report.feasible = true;
    out.report.solution = fs;
    out.report.cost = total;
    out.report.certificate = std::make_shared<SfmCertificate>(has_no_sfm(sys, fs));
    out.report.stats.iterations = static_cast<std::size_t>(ell);
    out.report.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return out;
}

std::string dp_table_to_text(const HierarchicalOutcome& outcome) {
    std::ostringstream os;
    const Hierarchy& h = outcome.hierarchy;
    for (int f = h.depth(); f >= 1; --f) {
        for (int c : h.layers[f - 1]) {
            const DpCell& cell = outcome.table[c];
            os << "N^" << f << "_" << position_in_layer(h, c) << " (component "
               << c + 1 << "):\n";
            for (const DpCandidate& cand : cell.candidates) {
                os << "  " << to_string(cand.edge) << "  " << cand.edge_cost << " + "
                   << cand.forest_cost << " = " << cand.edge_cost + cand.forest_cost;
                if (!cand.forest_roots.empty()) {
                    os << "   forest roots:";
                    for (int r : cand.forest_roots) os << " " << r + 1;
                }
                os << "\n";
            }
            os << "  min = " << cell.cost << " via";
            for (const FeedbackLink& e : cell.edges) os << " " << to_string(e);
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace sfsel
