#include "sfsel/approx.hpp"

#include <algorithm>
#include <chrono>

#include "sfsel/sfm.hpp"

namespace sfsel {

namespace {

double edge_cost(const EdgeCostMap& costs, const FeedbackLink& link) {
    auto it = costs.find(link);
    if (it == costs.end()) {
        throw Error(ErrorCode::InfeasibleLink,
                    "no cost known for cycle edge " + to_string(link));
    }
    return it->second;
}

}  // namespace

GreedyResult greedy(const std::vector<Cycle>& cycles,
                    const EdgeCostMap& costs,
                    const std::vector<int>& target,
                    const std::set<FeedbackLink>& free_edges) {
    std::set<int> wanted(target.begin(), target.end());

    std::set<int> reachable;
    for (const Cycle& c : cycles) reachable.insert(c.nodes.begin(), c.nodes.end());
    std::vector<int> orphans;
    for (int v : wanted) {
        if (!reachable.count(v)) orphans.push_back(v);
    }
    if (!orphans.empty()) {
        Error err(ErrorCode::Uncoverable, "nodes outside every cycle");
        err.nodes = orphans;
        throw err;
    }

    // Residual state: node sets shrink as nodes are covered, edge sets shrink
    // as edges become free or selected.
    std::vector<std::set<int>> nodes(cycles.size());
    std::vector<std::set<FeedbackLink>> edges(cycles.size());
    for (std::size_t k = 0; k < cycles.size(); ++k) {
        for (int v : cycles[k].nodes) {
            if (wanted.count(v)) nodes[k].insert(v);
        }
        for (const FeedbackLink& e : cycles[k].edges) {
            if (!free_edges.count(e)) edges[k].insert(e);
        }
    }

    GreedyResult res;
    std::set<int> covered;
    while (covered.size() < wanted.size()) {
        int best = -1;
        double best_price = 0.0;
        for (std::size_t k = 0; k < cycles.size(); ++k) {
            if (nodes[k].empty()) continue;
            double c = 0.0;
            for (const FeedbackLink& e : edges[k]) c += edge_cost(costs, e);
            double price = c / static_cast<double>(nodes[k].size());
            if (best == -1 || price < best_price) {
                best = static_cast<int>(k);
                best_price = price;
            }
        }

        GreedyRound round;
        round.selected_cycle = best;
        round.price = best_price;
        round.newly_covered.assign(nodes[best].begin(), nodes[best].end());
        res.rounds.push_back(round);

        covered.insert(nodes[best].begin(), nodes[best].end());
        res.edges.insert(edges[best].begin(), edges[best].end());
        const std::set<FeedbackLink> picked = edges[best];
        for (std::size_t k = 0; k < cycles.size(); ++k) {
            for (int v : round.newly_covered) nodes[k].erase(v);
            for (const FeedbackLink& e : picked) edges[k].erase(e);
        }
    }
    for (const FeedbackLink& e : res.edges) res.cost += edge_cost(costs, e);
    return res;
}

PotentialResult potential_solve(const std::vector<Cycle>& cycles,
                                const EdgeCostMap& costs,
                                const PotentialOptions& options) {
    PotentialResult res;
    res.solved_cycles = options.merge ? merge_cycles(cycles) : cycles;
    const std::vector<Cycle>& cs = res.solved_cycles;

    std::set<int> all_nodes;
    for (const Cycle& c : cs) all_nodes.insert(c.nodes.begin(), c.nodes.end());

    std::set<int> covered;
    std::set<FeedbackLink> selected;
    while (covered.size() < all_nodes.size()) {
        int best = -1;
        double best_pot = 0.0;
        PotentialIteration iter;
        for (std::size_t k = 0; k < cs.size(); ++k) {
            bool contributes = false;
            for (int v : cs[k].nodes) {
                if (!covered.count(v)) {
                    contributes = true;
                    break;
                }
            }
            if (!contributes) continue;

            double resid = 0.0;
            std::set<FeedbackLink> free_after = selected;
            for (const FeedbackLink& e : cs[k].edges) {
                if (!selected.count(e)) resid += edge_cost(costs, e);
                free_after.insert(e);
            }
            std::vector<int> rest;
            std::set<int> k_nodes(cs[k].nodes.begin(), cs[k].nodes.end());
            for (int v : all_nodes) {
                if (!covered.count(v) && !k_nodes.count(v)) rest.push_back(v);
            }
            double pot = resid + greedy(cs, costs, rest, free_after).cost;
            if (options.trace) iter.pots.emplace_back(static_cast<int>(k), pot);
            if (best == -1 || pot < best_pot) {
                best = static_cast<int>(k);
                best_pot = pot;
            }
        }

        if (res.iterations == 0) res.first_iteration_cost = best_pot;
        ++res.iterations;
        if (options.trace) {
            iter.selected_cycle = best;
            iter.selected_pot = best_pot;
            res.trace.push_back(std::move(iter));
        }
        covered.insert(cs[best].nodes.begin(), cs[best].nodes.end());
        selected.insert(cs[best].edges.begin(), cs[best].edges.end());
    }

    res.edges = std::move(selected);
    for (const FeedbackLink& e : res.edges) res.cost += edge_cost(costs, e);
    return res;
}

}  // namespace sfsel
