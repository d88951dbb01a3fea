#include "sfsel/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "sfsel/sfm.hpp"

namespace sfsel {

namespace {

// Subset ids ordered by (cost, mask). Feasibility of both fixed-mode
// conditions is monotone in the edge set, so scanning in this order may stop
// at the first feasible subset.
std::vector<std::uint32_t> masks_by_cost(const std::vector<double>& edge_cost) {
    const std::size_t e = edge_cost.size();
    const std::size_t total = std::size_t{1} << e;
    std::vector<double> cost(total, 0.0);
    for (std::size_t mask = 1; mask < total; ++mask) {
        std::size_t low = mask & (~mask + 1);
        int bit = std::countr_zero(mask);
        cost[mask] = cost[mask ^ low] + edge_cost[bit];
    }
    std::vector<std::uint32_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return cost[a] < cost[b]; });
    return order;
}

double mask_cost(const std::vector<double>& edge_cost, std::uint32_t mask) {
    double c = 0.0;
    for (std::size_t i = 0; i < edge_cost.size(); ++i) {
        if (mask & (1u << i)) c += edge_cost[i];
    }
    return c;
}

}  // namespace

SolveReport brute_force_problem1(const StructuredSystem& sys,
                                 const CostMatrix& costs,
                                 const OracleBudget& budget) {
    auto started = std::chrono::steady_clock::now();
    std::vector<FeedbackLink> edges;
    std::vector<double> edge_cost;
    for (const auto& [key, cost] : costs.entries()) {
        edges.push_back({key.first, key.second});
        edge_cost.push_back(cost);
    }
    if (static_cast<int>(edges.size()) > budget.max_feasible_edges) {
        throw Error(ErrorCode::BudgetExceeded,
                    std::to_string(edges.size()) + " feasible edges exceed the oracle budget of " +
                        std::to_string(budget.max_feasible_edges));
    }

    // Cheap edges first so equal-cost subsets then tie-break on low masks,
    // i.e. on small (input, output) pairs.
    std::vector<int> perm(edges.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (edge_cost[a] != edge_cost[b]) return edge_cost[a] < edge_cost[b];
        return edges[a] < edges[b];
    });
    std::vector<FeedbackLink> sorted_edges;
    std::vector<double> sorted_cost;
    for (int i : perm) {
        sorted_edges.push_back(edges[i]);
        sorted_cost.push_back(edge_cost[i]);
    }

    SolveReport report;
    report.solver = "oracle";
    std::size_t tested = 0;
    for (std::uint32_t mask : masks_by_cost(sorted_cost)) {
        if (budget.time_limit_seconds > 0 && (tested & 0x3ff) == 0) {
            double elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
            if (elapsed > budget.time_limit_seconds) {
                throw Error(ErrorCode::BudgetExceeded,
                            "oracle time limit of " +
                                std::to_string(budget.time_limit_seconds) +
                                " s exhausted");
            }
        }
        FeedbackSet fs;
        for (std::size_t i = 0; i < sorted_edges.size(); ++i) {
            if (mask & (1u << i)) fs.insert(sorted_edges[i]);
        }
        ++tested;
        SfmCertificate cert = has_no_sfm(sys, fs);
        if (cert.pass) {
            report.feasible = true;
            report.solution = fs;
            report.cost = mask_cost(sorted_cost, mask);
            report.certificate = std::make_shared<SfmCertificate>(std::move(cert));
            break;
        }
    }
    report.stats.iterations = tested;
    report.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

namespace {

struct CycleIndex {
    std::vector<FeedbackLink> edges;            // distinct, sorted
    std::vector<double> edge_cost;
    std::vector<int> nodes;                     // distinct node ids, sorted
    std::vector<std::uint32_t> cycle_edge_mask;
    std::vector<std::uint64_t> cycle_node_mask;
    std::uint64_t all_nodes_mask = 0;

    bool covers(std::uint32_t edge_mask, std::uint64_t* out_nodes = nullptr) const {
        std::uint64_t covered = 0;
        for (std::size_t k = 0; k < cycle_edge_mask.size(); ++k) {
            if ((cycle_edge_mask[k] & ~edge_mask) == 0) covered |= cycle_node_mask[k];
        }
        if (out_nodes) *out_nodes = covered;
        return covered == all_nodes_mask;
    }
};

CycleIndex index_cycles(const std::vector<Cycle>& cycles, const EdgeCostMap& costs,
                        const OracleBudget& budget) {
    CycleIndex idx;
    std::map<FeedbackLink, int> edge_id;
    std::map<int, int> node_id;
    for (const Cycle& c : cycles) {
        for (const FeedbackLink& e : c.edges) {
            if (!edge_id.count(e)) {
                edge_id[e] = static_cast<int>(idx.edges.size());
                idx.edges.push_back(e);
                auto it = costs.find(e);
                if (it == costs.end()) {
                    throw Error(ErrorCode::InfeasibleLink,
                                "no cost known for cycle edge " + to_string(e));
                }
                idx.edge_cost.push_back(it->second);
            }
        }
        for (int v : c.nodes) {
            if (!node_id.count(v)) {
                node_id[v] = static_cast<int>(idx.nodes.size());
                idx.nodes.push_back(v);
            }
        }
    }
    if (static_cast<int>(idx.edges.size()) > budget.max_feasible_edges ||
        idx.edges.size() >= 31) {
        throw Error(ErrorCode::BudgetExceeded,
                    std::to_string(idx.edges.size()) +
                        " distinct edges exceed the oracle budget");
    }
    if (idx.nodes.size() >= 64) {
        throw Error(ErrorCode::BudgetExceeded, "more than 63 distinct nodes");
    }
    for (const Cycle& c : cycles) {
        std::uint32_t em = 0;
        std::uint64_t nm = 0;
        for (const FeedbackLink& e : c.edges) em |= 1u << edge_id[e];
        for (int v : c.nodes) nm |= std::uint64_t{1} << node_id[v];
        idx.cycle_edge_mask.push_back(em);
        idx.cycle_node_mask.push_back(nm);
        idx.all_nodes_mask |= nm;
    }
    return idx;
}

}  // namespace

std::optional<CoverSolution> brute_force_problem2(const std::vector<Cycle>& cycles,
                                                  const EdgeCostMap& costs,
                                                  const OracleBudget& budget,
                                                  const std::vector<int>& universe) {
    if (!universe.empty()) {
        std::set<int> on_cycle;
        for (const Cycle& c : cycles) on_cycle.insert(c.nodes.begin(), c.nodes.end());
        for (int v : universe) {
            if (!on_cycle.count(v)) return std::nullopt;
        }
    }
    if (cycles.empty()) return std::nullopt;
    CycleIndex idx = index_cycles(cycles, costs, budget);

    // Coverage tests are cheap, so a full scan beats sorting subsets by cost;
    // ties keep the lowest mask.
    const std::size_t total = std::size_t{1} << idx.edges.size();
    bool found = false;
    double best_cost = 0.0;
    std::uint32_t best_mask = 0;
    for (std::size_t mask = 0; mask < total; ++mask) {
        double cost = mask_cost(idx.edge_cost, static_cast<std::uint32_t>(mask));
        if (found && cost >= best_cost) continue;
        if (idx.covers(static_cast<std::uint32_t>(mask))) {
            found = true;
            best_cost = cost;
            best_mask = static_cast<std::uint32_t>(mask);
        }
    }
    if (!found) return std::nullopt;
    CoverSolution sol;
    sol.cost = best_cost;
    for (std::size_t i = 0; i < idx.edges.size(); ++i) {
        if (best_mask & (1u << i)) sol.edges.insert(idx.edges[i]);
    }
    return sol;
}

namespace {

// Depth-first enumeration of the inclusion-minimal covering subsets of the
// candidate cycles, deduplicated across candidate pools by the caller.
void minimal_covers(const std::vector<int>& candidates,
                    const std::vector<std::uint64_t>& node_mask,
                    std::uint64_t target,
                    std::size_t enumeration_budget,
                    std::vector<int>& chosen,
                    std::uint64_t covered,
                    std::size_t next,
                    std::set<std::vector<int>>& out) {
    if (covered == target) {
        // Minimal iff every chosen cycle contributes a private node.
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            std::uint64_t others = 0;
            for (std::size_t j = 0; j < chosen.size(); ++j) {
                if (j != i) others |= node_mask[chosen[j]];
            }
            if ((node_mask[chosen[i]] & ~others) == 0) return;
        }
        if (out.size() >= enumeration_budget) {
            throw Error(ErrorCode::BudgetExceeded,
                        "more than " + std::to_string(enumeration_budget) +
                            " minimal optimal covers");
        }
        std::vector<int> sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        out.insert(std::move(sorted));
        return;
    }
    if (next >= candidates.size()) return;
    std::uint64_t rest = 0;
    for (std::size_t k = next; k < candidates.size(); ++k) rest |= node_mask[candidates[k]];
    if ((covered | rest) != target) return;

    // Include candidates[next] only when it adds something; skipping is
    // always allowed.
    minimal_covers(candidates, node_mask, target, enumeration_budget, chosen, covered,
                   next + 1, out);
    if (node_mask[candidates[next]] & ~covered) {
        chosen.push_back(candidates[next]);
        minimal_covers(candidates, node_mask, target, enumeration_budget, chosen,
                       covered | node_mask[candidates[next]], next + 1, out);
        chosen.pop_back();
    }
}

}  // namespace

MultiplicityReport multiplicities(const std::vector<Cycle>& cycles,
                                  const EdgeCostMap& costs,
                                  const OracleBudget& budget) {
    auto opt = brute_force_problem2(cycles, costs, budget);
    if (!opt) {
        throw Error(ErrorCode::Infeasible,
                    "no edge subset puts every node on a cycle");
    }
    CycleIndex idx = index_cycles(cycles, costs, budget);

    MultiplicityReport report;
    report.optimum = opt->cost;

    // Every optimal feasible edge subset spawns a candidate cycle pool; the
    // minimal covers inside those pools are exactly the minimal cycle sets
    // whose edge union costs the optimum.
    std::set<std::vector<int>> covers;
    const std::size_t total = std::size_t{1} << idx.edges.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (!cost_eq(mask_cost(idx.edge_cost, mask), opt->cost)) continue;
        if (!idx.covers(mask)) continue;
        std::vector<int> candidates;
        for (std::size_t k = 0; k < cycles.size(); ++k) {
            if ((idx.cycle_edge_mask[k] & ~mask) == 0) {
                candidates.push_back(static_cast<int>(k));
            }
        }
        std::vector<int> chosen;
        minimal_covers(candidates, idx.cycle_node_mask, idx.all_nodes_mask,
                       budget.max_cover_enumeration, chosen, 0, 0, covers);
    }

    for (const std::vector<int>& cover : covers) {
        CoverMultiplicity cm;
        cm.cycle_indices = cover;
        std::vector<int> mult(idx.edges.size(), 0);
        for (int k : cover) {
            for (std::size_t i = 0; i < idx.edges.size(); ++i) {
                if (idx.cycle_edge_mask[k] & (1u << i)) ++mult[i];
            }
        }
        cm.k1 = std::max(1, *std::max_element(mult.begin(), mult.end()));
        int k2 = -1;
        for (int k : cover) {
            int highest_outside = 0;
            for (std::size_t i = 0; i < idx.edges.size(); ++i) {
                if (!(idx.cycle_edge_mask[k] & (1u << i))) {
                    highest_outside = std::max(highest_outside, mult[i]);
                }
            }
            if (k2 == -1 || highest_outside < k2) k2 = highest_outside;
        }
        cm.k2 = std::max(1, k2);
        report.c_set.push_back(std::move(cm));
    }

    for (std::size_t i = 0; i < report.c_set.size(); ++i) {
        if (report.k1_witness == -1 || report.c_set[i].k1 < report.k1_tilde) {
            report.k1_tilde = report.c_set[i].k1;
            report.k1_witness = static_cast<int>(i);
        }
        if (report.k2_witness == -1 || report.c_set[i].k2 < report.k2_tilde) {
            report.k2_tilde = report.c_set[i].k2;
            report.k2_witness = static_cast<int>(i);
        }
    }
    return report;
}

std::string multiplicity_report_to_json(const MultiplicityReport& report) {
    nlohmann::json j;
    j["optimum"] = report.optimum;
    j["k1_tilde"] = report.k1_tilde;
    j["k2_tilde"] = report.k2_tilde;
    j["k1_witness"] = report.k1_witness;
    j["k2_witness"] = report.k2_witness;
    j["covers"] = nlohmann::json::array();
    for (const auto& cm : report.c_set) {
        j["covers"].push_back({{"cycles", cm.cycle_indices}, {"k1", cm.k1}, {"k2", cm.k2}});
    }
    return j.dump(2);
}

}  // namespace sfsel
