#include <doctest.h>

#include <random>

#include "sfsel/graph.hpp"
#include "test_support.hpp"

using namespace sfsel;

namespace {

// The set-cover reduction of {1,2}, {2,3}, {3,4,5} over universe {1..5}:
// nine states, four inputs on states 6..9, three outputs on 6..8.
StructuredSystem cover3_system() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= 9; ++i) edges.push_back({i, i});
    for (int j = 1; j <= 5; ++j) edges.push_back({9, j});
    edges.push_back({1, 6});
    edges.push_back({2, 6});
    edges.push_back({2, 7});
    edges.push_back({3, 7});
    edges.push_back({3, 8});
    edges.push_back({4, 8});
    edges.push_back({5, 8});
    return testsup::make_system(9, edges, {6, 7, 8, 9}, {6, 7, 8});
}

}  // namespace

TEST_CASE("state digraph mirrors the state edges") {
    auto sys = testsup::make_system(3, {{1, 2}, {2, 3}, {3, 1}}, {1}, {1});
    Digraph d = state_digraph(sys);
    CHECK(d.size() == 3);
    CHECK(d.edge_count() == 3);
    CHECK(d.has_edge(0, 1));
    CHECK(d.has_edge(2, 0));
}

TEST_CASE("state digraph of the set-cover reduction") {
    Digraph d = state_digraph(cover3_system());
    CHECK(d.size() == 9);
    for (int v = 0; v < 9; ++v) CHECK(d.has_edge(v, v));
    for (int j = 0; j < 5; ++j) CHECK(d.has_edge(8, j));
    CHECK(d.has_edge(0, 5));  // element 1 -> first set node
    CHECK(d.has_edge(4, 7));  // element 5 -> third set node
    CHECK_FALSE(d.has_edge(0, 6));
}

TEST_CASE("empty edge set gives isolated nodes") {
    auto sys = testsup::make_system(4, {}, {1}, {1});
    Digraph d = state_digraph(sys);
    CHECK(d.size() == 4);
    CHECK(d.edge_count() == 0);
}

TEST_CASE("closed-loop digraph adds io and feedback edges") {
    auto sys = testsup::make_system(2, {{1, 2}}, {1}, {2});
    SUBCASE("no feedback, no output-to-input edges") {
        Digraph d = closed_loop_digraph(sys, {});
        CHECK(d.size() == 4);
        CHECK(d.has_edge(2, 0));   // u1 -> x1
        CHECK(d.has_edge(1, 3));   // x2 -> y1
        CHECK_FALSE(d.has_edge(3, 2));
    }
    SUBCASE("feedback closes the loop") {
        Digraph d = closed_loop_digraph(sys, {{1, 1}});
        CHECK(d.has_edge(3, 2));  // y1 -> u1
    }
}

TEST_CASE("a single link threads a directed cycle through the tree instance") {
    auto [sys, costs] = testsup::hier6();
    (void)costs;
    Digraph d = closed_loop_digraph(sys, {{1, 4}});
    // u1 -> x1 -> x2 -> x4 -> y4 -> u1, with ids offset by n and n+m.
    const int u1 = 6, y4 = 6 + 6 + 4 - 1;
    CHECK(d.has_edge(u1, 0));
    CHECK(d.has_edge(0, 1));
    CHECK(d.has_edge(1, 3));
    CHECK(d.has_edge(3, y4));
    CHECK(d.has_edge(y4, u1));
    auto cycles = enumerate_cycles(d, 100000);
    bool found = false;
    for (const auto& cyc : cycles) {
        found = found || cyc == std::vector<int>{0, 1, 3, y4, u1};
    }
    CHECK(found);
}

TEST_CASE("scc condensation of simple shapes") {
    SUBCASE("one cycle, one component") {
        auto sys = testsup::make_system(3, {{1, 2}, {2, 3}, {3, 1}}, {1}, {1});
        SccDecomposition scc = scc_condense(state_digraph(sys));
        REQUIRE(scc.count() == 1);
        CHECK(scc.components[0] == std::vector<int>{0, 1, 2});
        CHECK(scc.dag_edges.empty());
    }
    SUBCASE("five singleton components in the back-edge demo shape") {
        auto sys = testsup::make_system(
            5, {{1, 3}, {1, 4}, {3, 2}, {4, 2}, {4, 5}}, {1}, {1});
        SccDecomposition scc = scc_condense(state_digraph(sys));
        CHECK(scc.count() == 5);
        for (int c = 0; c < 5; ++c) CHECK(scc.components[c] == std::vector<int>{c});
    }
    SUBCASE("two disjoint 2-cycles") {
        auto sys = testsup::make_system(4, {{1, 2}, {2, 1}, {3, 4}, {4, 3}}, {1}, {1});
        SccDecomposition scc = scc_condense(state_digraph(sys));
        CHECK(scc.count() == 2);
        CHECK(scc.dag_edges.empty());
    }
}

TEST_CASE("state bipartite graph and matchings") {
    SUBCASE("a 3-cycle is itself a perfect matching") {
        auto sys = testsup::make_system(3, {{1, 2}, {2, 3}, {3, 1}}, {1}, {1});
        MatchingResult m = max_matching(state_bipartite(sys));
        CHECK(m.size == 3);
        CHECK(m.perfect);
    }
    SUBCASE("self-damped systems carry the diagonal matching") {
        auto sys = testsup::make_system(4, {{1, 1}, {2, 2}, {3, 3}, {4, 4}, {1, 2}},
                                        {1}, {1});
        CHECK(max_matching(state_bipartite(sys)).perfect);
    }
    SUBCASE("a bare path has no perfect matching") {
        auto sys = testsup::make_system(2, {{1, 2}}, {1}, {1});
        MatchingResult m = max_matching(state_bipartite(sys));
        CHECK(m.size == 1);
        CHECK_FALSE(m.perfect);
    }
    SUBCASE("set-cover reduction is perfectly matched via its diagonal") {
        CHECK(max_matching(state_bipartite(cover3_system())).perfect);
    }
    SUBCASE("complete 2x2") {
        Bipartite b;
        b.add_left({NodeKind::State, 1});
        b.add_left({NodeKind::State, 2});
        b.add_right({NodeKind::State, 1});
        b.add_right({NodeKind::State, 2});
        for (int l = 0; l < 2; ++l) {
            for (int r = 0; r < 2; ++r) b.add_edge(l, r);
        }
        CHECK(max_matching(b).size == 2);
    }
}

TEST_CASE("closed-loop bipartite with empty feedback matches iff the state graph does") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        auto d = testsup::random_digraph(n, 0.3, rng);
        StructuredSystem sys;
        sys.n = n;
        for (int i = 0; i < n; ++i) {
            for (int j : d.out(i)) sys.state_edges.insert({i + 1, j + 1});
        }
        sys.input_state = {1};
        sys.output_state = {n};
        bool state_pm = max_matching(state_bipartite(sys)).perfect;
        bool closed_pm = max_matching(closed_loop_bipartite(sys, {})).perfect;
        CHECK(state_pm == closed_pm);
    }
}

TEST_CASE("cycle enumeration on fixed shapes") {
    SUBCASE("3-cycle has exactly one cycle") {
        auto sys = testsup::make_system(3, {{1, 2}, {2, 3}, {3, 1}}, {1}, {1});
        auto cycles = enumerate_cycles(state_digraph(sys), 100);
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0] == std::vector<int>{0, 1, 2});
    }
    SUBCASE("DAGs have none") {
        auto sys = testsup::make_system(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}, {1}, {1});
        CHECK(enumerate_cycles(state_digraph(sys), 100).empty());
    }
    SUBCASE("the cap throws once exceeded") {
        // Complete digraph on five nodes has far more than three cycles.
        Digraph d;
        for (int i = 1; i <= 5; ++i) d.add_node({NodeKind::State, i});
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                if (i != j) d.add_edge(i, j);
            }
        }
        CHECK_THROWS_AS(enumerate_cycles(d, 3), Error);
        try {
            enumerate_cycles(d, 3);
        } catch (const Error& err) {
            CHECK(err.code() == ErrorCode::CycleCapExceeded);
            CHECK(err.cap == 3);
            CHECK(err.partial == 3);
        }
    }
}

TEST_CASE("kernels agree with brute force on random graphs") {
    std::mt19937_64 rng(2024);
    int scc_checked = 0, cycle_checked = 0, matching_checked = 0;
    for (int trial = 0; trial < 520; ++trial) {
        int n = 1 + static_cast<int>(rng() % 8);
        double density = 0.05 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
        Digraph d = testsup::random_digraph(n, density, rng);

        // SCC decomposition vs mutual reachability.
        SccDecomposition scc = scc_condense(d);
        CHECK(scc.components == testsup::brute_sccs(d));
        ++scc_checked;

        // Components partition the nodes and the condensation is acyclic.
        std::set<int> all;
        for (const auto& comp : scc.components) all.insert(comp.begin(), comp.end());
        CHECK(static_cast<int>(all.size()) == n);
        Digraph dag;
        for (int c = 0; c < scc.count(); ++c) dag.add_node({NodeKind::Scc, c + 1});
        for (const auto& [a, b] : scc.dag_edges) dag.add_edge(a, b);
        CHECK(enumerate_cycles(dag, 10).empty());

        // Cycle enumeration vs subset/rotation brute force.
        auto fast = enumerate_cycles(d, 1000000);
        std::sort(fast.begin(), fast.end());
        CHECK(fast == testsup::brute_cycles(d));
        ++cycle_checked;

        // Matching vs backtracking on a derived bipartite graph.
        StructuredSystem sys;
        sys.n = n;
        for (int i = 0; i < n; ++i) {
            for (int j : d.out(i)) sys.state_edges.insert({i + 1, j + 1});
        }
        sys.input_state = {1};
        sys.output_state = {1};
        Bipartite b = state_bipartite(sys);
        CHECK(max_matching(b).size == testsup::brute_matching_size(b));
        ++matching_checked;
    }
    CHECK(scc_checked >= 500);
    CHECK(cycle_checked >= 500);
    CHECK(matching_checked >= 500);
}

TEST_CASE("dot export tags node classes and feedback edges") {
    auto sys = testsup::make_system(2, {{1, 2}}, {1}, {2});
    Digraph d = closed_loop_digraph(sys, {{1, 1}});
    std::string dot = d.to_dot();
    CHECK(dot.find("shape=box") != std::string::npos);
    CHECK(dot.find("shape=diamond") != std::string::npos);
    CHECK(dot.find("shape=ellipse") != std::string::npos);
    CHECK(dot.find("color=red") != std::string::npos);
    CHECK(dot.find("digraph") == 0);
}
