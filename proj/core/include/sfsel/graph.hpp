#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sfsel/system.hpp"

namespace sfsel {

enum class NodeKind { State, Input, Output, Scc };

struct NodeLabel {
    NodeKind kind = NodeKind::State;
    int index = 0;  // 1-based index within its class

    friend bool operator==(const NodeLabel&, const NodeLabel&) = default;
};

std::string to_string(const NodeLabel& label);

// Simple digraph over dense node ids 0..size-1. Adjacency lists are kept
// sorted and deduplicated so every traversal downstream is deterministic.
class Digraph {
  public:
    int add_node(NodeLabel label);
    void add_edge(int from, int to);

    int size() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const;
    const std::vector<int>& out(int node) const { return adj_.at(node); }
    const NodeLabel& label(int node) const { return labels_.at(node); }
    bool has_edge(int from, int to) const;

    std::string to_dot(
        const std::function<std::string(int from, int to)>& edge_label = nullptr) const;

  private:
    std::vector<std::vector<int>> adj_;
    std::vector<NodeLabel> labels_;
};

// Bipartite graph; left and right vertices carry labels so matching results
// can be reported in problem terms.
class Bipartite {
  public:
    int add_left(NodeLabel label);
    int add_right(NodeLabel label);
    void add_edge(int left, int right);

    int left_size() const { return static_cast<int>(adj_.size()); }
    int right_size() const { return static_cast<int>(right_labels_.size()); }
    const std::vector<int>& out(int left) const { return adj_.at(left); }
    const NodeLabel& left_label(int v) const { return left_labels_.at(v); }
    const NodeLabel& right_label(int v) const { return right_labels_.at(v); }

  private:
    std::vector<std::vector<int>> adj_;
    std::vector<NodeLabel> left_labels_;
    std::vector<NodeLabel> right_labels_;
};

struct MatchingResult {
    int size = 0;
    bool perfect = false;                  // size == min(|left|, |right|)
    std::vector<int> left_match;           // left -> right or -1
    std::vector<int> right_match;          // right -> left or -1
    std::vector<int> unmatched_right;      // deficient vertices, ascending
};

struct SccDecomposition {
    // Components hold sorted node ids and are ordered by smallest member.
    std::vector<std::vector<int>> components;
    std::vector<int> component_of;               // node id -> component index
    std::vector<std::pair<int, int>> dag_edges;  // deduplicated, no self loops

    int count() const { return static_cast<int>(components.size()); }
};

// D(A): one node per state, edges mirroring state_edges.
Digraph state_digraph(const StructuredSystem& sys);

// D(A,B,C) plus the feedback edges y_j -> u_i of `fs`.
Digraph closed_loop_digraph(const StructuredSystem& sys, const FeedbackSet& fs);

// B(A): left copies x'_1..x'_n, right x_1..x_n, one edge per state edge.
Bipartite state_bipartite(const StructuredSystem& sys);

// B(A,B,C,K): state bipartite plus input/output columns, the u'_i -> u_i and
// y'_j -> y_j self links, and one edge per feedback link.
Bipartite closed_loop_bipartite(const StructuredSystem& sys, const FeedbackSet& fs);

SccDecomposition scc_condense(const Digraph& d);

// Hopcroft-Karp maximum-cardinality matching.
MatchingResult max_matching(const Bipartite& b);

// All simple directed cycles, one per cycle, rotated to start at the smallest
// node id, ordered by start node then lexicographic successor choice.
// Throws CycleCapExceeded when more than `cap` cycles exist.
std::vector<std::vector<int>> enumerate_cycles(const Digraph& d, long cap);

long default_cycle_cap();

}  // namespace sfsel
