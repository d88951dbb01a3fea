#include "sfsel/backedge.hpp"

#include <algorithm>
#include <chrono>

#include <nlohmann/json.hpp>

#include "sfsel/graph.hpp"

namespace sfsel {

namespace {

// Per-state reachability over D(A): reach[s] = states reachable from s,
// including s itself.
std::vector<std::vector<char>> state_reachability(const StructuredSystem& sys) {
    const int n = sys.n;
    std::vector<std::vector<int>> adj(n);
    for (const auto& [from, to] : sys.state_edges) adj[from - 1].push_back(to - 1);
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int s = 0; s < n; ++s) {
        std::vector<int> stack{s};
        reach[s][s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (!reach[s][w]) {
                    reach[s][w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return reach;
}

}  // namespace

std::vector<FeedbackLink> check_backedge(const StructuredSystem& sys,
                                         const CostMatrix& costs) {
    auto reach = state_reachability(sys);
    std::vector<FeedbackLink> violations;
    for (const auto& [key, cost] : costs.entries()) {
        const auto& [input, output] = key;
        int from = sys.state_of_input(input) - 1;
        int to = sys.state_of_output(output) - 1;
        if (!reach[from][to]) violations.push_back({input, output});
        (void)cost;
    }
    return violations;
}

SetCoverInstance reduce_to_set_cover(const StructuredSystem& sys,
                                     const CostMatrix& costs) {
    if (!check_backedge(sys, costs).empty()) {
        throw Error(ErrorCode::AssumptionViolated,
                    "back-edge structure violated: some feasible link has no "
                    "input-to-output path (rerun with --project to drop them)");
    }
    if (!max_matching(state_bipartite(sys)).perfect) {
        throw Error(ErrorCode::AssumptionViolated,
                    "state bipartite graph has no perfect matching; "
                    "use the oracle solver");
    }

    SetCoverInstance inst;
    inst.universe_size = sys.n;
    Digraph base = closed_loop_digraph(sys, {});
    for (const auto& [key, cost] : costs.entries()) {
        const auto& [input, output] = key;
        FeedbackLink link{input, output};
        Digraph d = base;
        d.add_edge(sys.n + sys.num_inputs() + output - 1, sys.n + input - 1);
        SccDecomposition scc = scc_condense(d);
        int comp = scc.component_of[sys.n + input - 1];
        std::vector<int> states;
        for (int v : scc.components[comp]) {
            if (d.label(v).kind == NodeKind::State) states.push_back(d.label(v).index);
        }
        inst.sets.push_back(std::move(states));
        inst.weights.push_back(cost);
        inst.provenance.push_back(link);
    }
    return inst;
}

std::vector<int> greedy_set_cover(const SetCoverInstance& inst) {
    std::vector<char> covered(inst.universe_size + 1, 0);
    std::vector<char> coverable(inst.universe_size + 1, 0);
    for (const auto& set : inst.sets) {
        for (int e : set) coverable[e] = 1;
    }
    std::vector<int> orphans;
    for (int e = 1; e <= inst.universe_size; ++e) {
        if (!coverable[e]) orphans.push_back(e);
    }
    if (!orphans.empty()) {
        Error err(ErrorCode::Uncoverable, "elements outside every set");
        err.nodes = orphans;
        throw err;
    }

    std::vector<int> chosen;
    int remaining = inst.universe_size;
    while (remaining > 0) {
        int best = -1;
        double best_ratio = 0.0;
        for (std::size_t d = 0; d < inst.sets.size(); ++d) {
            int fresh = 0;
            for (int e : inst.sets[d]) {
                if (!covered[e]) ++fresh;
            }
            if (fresh == 0) continue;
            double ratio = inst.weights[d] / static_cast<double>(fresh);
            if (best == -1 || ratio < best_ratio) {
                best = static_cast<int>(d);
                best_ratio = ratio;
            }
        }
        chosen.push_back(best);
        for (int e : inst.sets[best]) {
            if (!covered[e]) {
                covered[e] = 1;
                --remaining;
            }
        }
    }
    return chosen;
}

BackedgeOutcome backedge_solve(const StructuredSystem& sys,
                               const CostMatrix& costs,
                               const BackedgeOptions& options) {
    auto started = std::chrono::steady_clock::now();
    BackedgeOutcome out;
    out.report.solver = "backedge";

    const CostMatrix* effective = &costs;
    CostMatrix projected_costs;
    if (options.project) {
        out.projected = check_backedge(sys, costs);
        if (!out.projected.empty()) {
            std::set<FeedbackLink> drop(out.projected.begin(), out.projected.end());
            for (const auto& [key, cost] : costs.entries()) {
                if (!drop.count({key.first, key.second})) {
                    projected_costs.set(key.first, key.second, cost);
                }
            }
            effective = &projected_costs;
        }
    }

    out.instance = reduce_to_set_cover(sys, *effective);
    try {
        out.chosen_sets = greedy_set_cover(out.instance);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::Uncoverable) throw;
        out.report.feasible = false;
        return out;
    }

    FeedbackSet fs;
    for (int d : out.chosen_sets) fs.insert(out.instance.provenance[d]);
    out.report.feasible = true;
    out.report.solution = fs;
    out.report.cost = cost_of(fs, *effective);
    out.report.certificate = std::make_shared<SfmCertificate>(has_no_sfm(sys, fs));
    out.report.stats.iterations = out.chosen_sets.size();
    out.report.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return out;
}

std::string set_cover_to_json(const SetCoverInstance& inst) {
    nlohmann::json j;
    j["universe_size"] = inst.universe_size;
    j["sets"] = nlohmann::json::array();
    for (std::size_t d = 0; d < inst.sets.size(); ++d) {
        nlohmann::json js;
        js["elements"] = inst.sets[d];
        js["weight"] = inst.weights[d];
        js["edge"] = {{"input", inst.provenance[d].input},
                      {"output", inst.provenance[d].output}};
        j["sets"].push_back(js);
    }
    return j.dump(2);
}

}  // namespace sfsel
