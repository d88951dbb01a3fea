#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// Everything here deliberately avoids the library's own algorithms: SCCs come
// from pairwise reachability, matchings from backtracking, cycles from
// subset/rotation enumeration.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "sfsel/graph.hpp"
#include "sfsel/instances.hpp"
#include "sfsel/system.hpp"

namespace testsup {

inline sfsel::StructuredSystem make_system(int n,
                                           std::vector<std::pair<int, int>> edges,
                                           std::vector<int> inputs,
                                           std::vector<int> outputs) {
    sfsel::StructuredSystem sys;
    sys.n = n;
    sys.state_edges.insert(edges.begin(), edges.end());
    sys.input_state = std::move(inputs);
    sys.output_state = std::move(outputs);
    return sys;
}

inline sfsel::CostMatrix make_costs(
    const std::vector<std::tuple<int, int, double>>& entries) {
    sfsel::CostMatrix costs;
    for (const auto& [i, j, c] : entries) costs.set(i, j, c);
    return costs;
}

// The worked 8-component instance: singleton components with a sparse DAG and
// eleven unit-cost feedback entries.
inline std::pair<sfsel::StructuredSystem, sfsel::CostMatrix> cyclecover8() {
    auto sys = make_system(8,
                           {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8},
                            {1, 3}, {1, 4}, {5, 2}, {8, 5}, {6, 7}},
                           {1, 2, 3, 4, 5, 6, 7, 8}, {1, 2, 3, 4, 5, 6, 7, 8});
    auto costs = make_costs({{1, 2, 1},
                             {2, 3, 1},
                             {2, 4, 1},
                             {3, 3, 1},
                             {5, 1, 1},
                             {5, 7, 1},
                             {6, 5, 1},
                             {6, 6, 1},
                             {7, 7, 1},
                             {8, 6, 1},
                             {8, 8, 1}});
    return {std::move(sys), std::move(costs)};
}

// The worked 5-state back-edge instance.
inline std::pair<sfsel::StructuredSystem, sfsel::CostMatrix> backedge5() {
    auto sys = make_system(5,
                           {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5},
                            {1, 3}, {1, 4}, {3, 2}, {4, 2}, {4, 5}},
                           {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5});
    auto costs = make_costs({{1, 1, 1},
                             {1, 2, 10},
                             {1, 3, 10},
                             {1, 4, 2},
                             {1, 5, 10},
                             {2, 2, 3},
                             {3, 2, 10},
                             {3, 3, 4},
                             {4, 2, 10},
                             {4, 4, 2},
                             {4, 5, 8},
                             {5, 5, 5}});
    return {std::move(sys), std::move(costs)};
}

// The worked 6-component hierarchical instance (three layers).
inline std::pair<sfsel::StructuredSystem, sfsel::CostMatrix> hier6() {
    auto sys = make_system(6,
                           {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6},
                            {1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}},
                           {1, 3, 2, 4, 5, 6}, {1, 3, 2, 4, 5, 6});
    auto costs = make_costs({{1, 1, 1},
                             {1, 2, 10},
                             {1, 3, 10},
                             {1, 4, 2},
                             {1, 5, 10},
                             {1, 6, 10},
                             {2, 2, 3},
                             {2, 6, 2},
                             {3, 3, 1},
                             {3, 4, 10},
                             {3, 5, 10},
                             {4, 4, 1},
                             {5, 5, 1},
                             {6, 6, 1}});
    return {std::move(sys), std::move(costs)};
}

// Set-cover reduction demo: universe {1..5}, sets {1,2}, {2,3}, {3,4,5}.
inline sfsel::WeightedSetCoverSpec cover3spec(std::vector<double> weights = {1, 1, 1}) {
    sfsel::WeightedSetCoverSpec spec;
    spec.universe_size = 5;
    spec.sets = {{1, 2}, {2, 3}, {3, 4, 5}};
    spec.weights = std::move(weights);
    return spec;
}

// ---- brute-force oracles ----------------------------------------------

inline std::vector<std::vector<char>> reach_matrix(const sfsel::Digraph& d) {
    const int n = d.size();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int s = 0; s < n; ++s) {
        std::vector<int> stack{s};
        reach[s][s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : d.out(v)) {
                if (!reach[s][w]) {
                    reach[s][w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return reach;
}

// SCCs as sorted components ordered by smallest member, via mutual
// reachability only.
inline std::vector<std::vector<int>> brute_sccs(const sfsel::Digraph& d) {
    auto reach = reach_matrix(d);
    const int n = d.size();
    std::vector<char> done(n, 0);
    std::vector<std::vector<int>> comps;
    for (int v = 0; v < n; ++v) {
        if (done[v]) continue;
        std::vector<int> comp;
        for (int w = 0; w < n; ++w) {
            if (reach[v][w] && reach[w][v]) {
                comp.push_back(w);
                done[w] = 1;
            }
        }
        comps.push_back(comp);
    }
    return comps;
}

// Maximum bipartite matching size by exhaustive backtracking.
inline int brute_matching_size(const sfsel::Bipartite& b) {
    std::vector<char> used(b.right_size(), 0);
    std::function<int(int)> go = [&](int left) -> int {
        if (left == b.left_size()) return 0;
        int best = go(left + 1);  // leave `left` unmatched
        for (int r : b.out(left)) {
            if (!used[r]) {
                used[r] = 1;
                best = std::max(best, 1 + go(left + 1));
                used[r] = 0;
            }
        }
        return best;
    };
    return go(0);
}

// Every simple directed cycle by subset + rotation enumeration; cycles are
// returned rotated to the smallest node and sorted.
inline std::vector<std::vector<int>> brute_cycles(const sfsel::Digraph& d) {
    const int n = d.size();
    std::vector<std::vector<int>> found;
    for (int v = 0; v < n; ++v) {
        if (d.has_edge(v, v)) found.push_back({v});
    }
    std::vector<int> members;
    std::function<void(int)> pick = [&](int from) {
        if (members.size() >= 2) {
            std::vector<int> rest(members.begin() + 1, members.end());
            std::sort(rest.begin(), rest.end());
            do {
                std::vector<int> cyc{members.front()};
                cyc.insert(cyc.end(), rest.begin(), rest.end());
                bool ok = true;
                for (std::size_t k = 0; k < cyc.size() && ok; ++k) {
                    ok = d.has_edge(cyc[k], cyc[(k + 1) % cyc.size()]);
                }
                if (ok) found.push_back(cyc);
            } while (std::next_permutation(rest.begin(), rest.end()));
        }
        for (int v = from; v < n; ++v) {
            members.push_back(v);
            pick(v + 1);
            members.pop_back();
        }
    };
    // Subsets are generated with their smallest member first, so each cycle
    // is reported exactly once per rotation class.
    for (int first = 0; first < n; ++first) {
        members = {first};
        pick(first + 1);
        members = {};
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

// Minimum-weight set cover by subset enumeration; -1 cost when uncoverable.
inline double brute_set_cover(const std::vector<std::vector<int>>& sets,
                              const std::vector<double>& weights,
                              int universe_size) {
    const std::size_t total = std::size_t{1} << sets.size();
    double best = -1.0;
    for (std::size_t mask = 0; mask < total; ++mask) {
        std::set<int> covered;
        double w = 0.0;
        for (std::size_t k = 0; k < sets.size(); ++k) {
            if (mask & (std::size_t{1} << k)) {
                covered.insert(sets[k].begin(), sets[k].end());
                w += weights[k];
            }
        }
        if (static_cast<int>(covered.size()) == universe_size &&
            (best < 0 || w < best)) {
            best = w;
        }
    }
    return best;
}

// Deterministic random digraph over n nodes.
inline sfsel::Digraph random_digraph(int n, double density, std::mt19937_64& rng) {
    sfsel::Digraph d;
    for (int i = 1; i <= n; ++i) d.add_node({sfsel::NodeKind::State, i});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) d.add_edge(i, j);
        }
    }
    return d;
}

}  // namespace testsup
