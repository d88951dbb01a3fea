#include "sfsel/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

#include "sfsel/errors.hpp"

namespace sfsel {

std::string to_string(const NodeLabel& label) {
    const char* prefix = "?";
    switch (label.kind) {
        case NodeKind::State: prefix = "x"; break;
        case NodeKind::Input: prefix = "u"; break;
        case NodeKind::Output: prefix = "y"; break;
        case NodeKind::Scc: prefix = "N"; break;
    }
    return prefix + std::to_string(label.index);
}

int Digraph::add_node(NodeLabel label) {
    adj_.emplace_back();
    labels_.push_back(label);
    return static_cast<int>(adj_.size()) - 1;
}

void Digraph::add_edge(int from, int to) {
    auto& row = adj_.at(from);
    auto it = std::lower_bound(row.begin(), row.end(), to);
    if (it == row.end() || *it != to) row.insert(it, to);
}

std::size_t Digraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& row : adj_) total += row.size();
    return total;
}

bool Digraph::has_edge(int from, int to) const {
    const auto& row = adj_.at(from);
    return std::binary_search(row.begin(), row.end(), to);
}

std::string Digraph::to_dot(
    const std::function<std::string(int, int)>& edge_label) const {
    std::ostringstream os;
    os << "digraph G {\n";
    for (int v = 0; v < size(); ++v) {
        const char* shape = "ellipse";
        switch (labels_[v].kind) {
            case NodeKind::State: shape = "ellipse"; break;
            case NodeKind::Input: shape = "box"; break;
            case NodeKind::Output: shape = "diamond"; break;
            case NodeKind::Scc: shape = "doubleoctagon"; break;
        }
        os << "  n" << v << " [label=\"" << to_string(labels_[v]) << "\", shape="
           << shape << "];\n";
    }
    for (int v = 0; v < size(); ++v) {
        for (int w : adj_[v]) {
            os << "  n" << v << " -> n" << w;
            const bool feedback = labels_[v].kind == NodeKind::Output &&
                                  labels_[w].kind == NodeKind::Input;
            std::string label = edge_label ? edge_label(v, w) : "";
            if (feedback || !label.empty()) {
                os << " [";
                if (feedback) os << "color=red";
                if (feedback && !label.empty()) os << ", ";
                if (!label.empty()) os << "label=\"" << label << "\"";
                os << "]";
            }
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

int Bipartite::add_left(NodeLabel label) {
    adj_.emplace_back();
    left_labels_.push_back(label);
    return static_cast<int>(adj_.size()) - 1;
}

int Bipartite::add_right(NodeLabel label) {
    right_labels_.push_back(label);
    return static_cast<int>(right_labels_.size()) - 1;
}

void Bipartite::add_edge(int left, int right) {
    auto& row = adj_.at(left);
    auto it = std::lower_bound(row.begin(), row.end(), right);
    if (it == row.end() || *it != right) row.insert(it, right);
}

Digraph state_digraph(const StructuredSystem& sys) {
    Digraph d;
    for (int i = 1; i <= sys.n; ++i) d.add_node({NodeKind::State, i});
    for (const auto& [from, to] : sys.state_edges) d.add_edge(from - 1, to - 1);
    return d;
}

Digraph closed_loop_digraph(const StructuredSystem& sys, const FeedbackSet& fs) {
    Digraph d;
    const int n = sys.n, m = sys.num_inputs(), p = sys.num_outputs();
    for (int i = 1; i <= n; ++i) d.add_node({NodeKind::State, i});
    for (int i = 1; i <= m; ++i) d.add_node({NodeKind::Input, i});
    for (int j = 1; j <= p; ++j) d.add_node({NodeKind::Output, j});
    for (const auto& [from, to] : sys.state_edges) d.add_edge(from - 1, to - 1);
    for (int i = 1; i <= m; ++i) d.add_edge(n + i - 1, sys.state_of_input(i) - 1);
    for (int j = 1; j <= p; ++j) d.add_edge(sys.state_of_output(j) - 1, n + m + j - 1);
    for (const FeedbackLink& link : fs) {
        d.add_edge(n + m + link.output - 1, n + link.input - 1);
    }
    return d;
}

Bipartite state_bipartite(const StructuredSystem& sys) {
    Bipartite b;
    for (int i = 1; i <= sys.n; ++i) b.add_left({NodeKind::State, i});
    for (int i = 1; i <= sys.n; ++i) b.add_right({NodeKind::State, i});
    // Edge x_a -> x_b pairs the head's primed copy with the tail.
    for (const auto& [from, to] : sys.state_edges) b.add_edge(to - 1, from - 1);
    return b;
}

Bipartite closed_loop_bipartite(const StructuredSystem& sys, const FeedbackSet& fs) {
    Bipartite b;
    const int n = sys.n, m = sys.num_inputs(), p = sys.num_outputs();
    for (int i = 1; i <= n; ++i) b.add_left({NodeKind::State, i});
    for (int i = 1; i <= m; ++i) b.add_left({NodeKind::Input, i});
    for (int j = 1; j <= p; ++j) b.add_left({NodeKind::Output, j});
    for (int i = 1; i <= n; ++i) b.add_right({NodeKind::State, i});
    for (int i = 1; i <= m; ++i) b.add_right({NodeKind::Input, i});
    for (int j = 1; j <= p; ++j) b.add_right({NodeKind::Output, j});

    for (const auto& [from, to] : sys.state_edges) b.add_edge(to - 1, from - 1);
    for (int i = 1; i <= m; ++i) {
        b.add_edge(sys.state_of_input(i) - 1, n + i - 1);  // (x'_s, u_i)
        b.add_edge(n + i - 1, n + i - 1);                  // (u'_i, u_i)
    }
    for (int j = 1; j <= p; ++j) {
        b.add_edge(n + m + j - 1, sys.state_of_output(j) - 1);  // (y'_j, x_s)
        b.add_edge(n + m + j - 1, n + m + j - 1);               // (y'_j, y_j)
    }
    for (const FeedbackLink& link : fs) {
        b.add_edge(n + link.input - 1, n + m + link.output - 1);  // (u'_i, y_j)
    }
    return b;
}

SccDecomposition scc_condense(const Digraph& d) {
    const int n = d.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> raw_components;
    int next_index = 0;

    // Iterative Tarjan; frames carry the position within the adjacency row.
    struct Frame {
        int node;
        std::size_t next_child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& row = d.out(f.node);
            if (f.next_child < row.size()) {
                int w = row[f.next_child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
            } else {
                if (low[f.node] == index[f.node]) {
                    std::vector<int> members;
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        members.push_back(w);
                    } while (w != f.node);
                    std::sort(members.begin(), members.end());
                    raw_components.push_back(std::move(members));
                }
                int v = f.node;
                frames.pop_back();
                if (!frames.empty()) {
                    low[frames.back().node] = std::min(low[frames.back().node], low[v]);
                }
            }
        }
    }

    SccDecomposition out;
    out.components = std::move(raw_components);
    std::sort(out.components.begin(), out.components.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    out.component_of.assign(n, -1);
    for (int c = 0; c < static_cast<int>(out.components.size()); ++c) {
        for (int v : out.components[c]) out.component_of[v] = c;
    }
    std::set<std::pair<int, int>> dag;
    for (int v = 0; v < n; ++v) {
        for (int w : d.out(v)) {
            int a = out.component_of[v], b = out.component_of[w];
            if (a != b) dag.insert({a, b});
        }
    }
    out.dag_edges.assign(dag.begin(), dag.end());
    return out;
}

MatchingResult max_matching(const Bipartite& b) {
    const int nl = b.left_size(), nr = b.right_size();
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> match_l(nl, -1), match_r(nr, -1), dist(nl);

    auto bfs = [&]() {
        std::deque<int> queue;
        for (int u = 0; u < nl; ++u) {
            if (match_l[u] == -1) {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = kInf;
            }
        }
        bool found = false;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : b.out(u)) {
                int u2 = match_r[v];
                if (u2 == -1) {
                    found = true;
                } else if (dist[u2] == kInf) {
                    dist[u2] = dist[u] + 1;
                    queue.push_back(u2);
                }
            }
        }
        return found;
    };

    std::function<bool(int)> dfs = [&](int u) {
        for (int v : b.out(u)) {
            int u2 = match_r[v];
            if (u2 == -1 || (dist[u2] == dist[u] + 1 && dfs(u2))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    };

    MatchingResult res;
    while (bfs()) {
        for (int u = 0; u < nl; ++u) {
            if (match_l[u] == -1 && dfs(u)) ++res.size;
        }
    }
    res.left_match = std::move(match_l);
    res.right_match = std::move(match_r);
    res.perfect = res.size == std::min(nl, nr);
    for (int v = 0; v < nr; ++v) {
        if (res.right_match[v] == -1) res.unmatched_right.push_back(v);
    }
    return res;
}

namespace {

// Johnson-style elementary circuit search rooted at the smallest node of each
// cycle. The subgraph passed in only contains nodes >= s in the original id
// order, so every reported cycle starts at its minimum node.
class CircuitSearch {
  public:
    CircuitSearch(const Digraph& d, long cap) : d_(d), cap_(cap) {}

    std::vector<std::vector<int>> run() {
        const int n = d_.size();
        blocked_.assign(n, false);
        block_list_.assign(n, {});
        for (int s = 0; s < n; ++s) {
            // Restrict to the SCC of s within the subgraph induced by {s..n-1}.
            scc_mask_ = scc_membership(s);
            if (scc_mask_.empty()) continue;
            for (int v = s; v < n; ++v) {
                blocked_[v] = false;
                block_list_[v].clear();
            }
            start_ = s;
            path_.clear();
            circuit(s);
        }
        return std::move(cycles_);
    }

  private:
    // Nodes of the SCC containing s in the induced subgraph, or empty when s
    // cannot lie on any cycle there.
    std::vector<char> scc_membership(int s) {
        const int n = d_.size();
        Digraph sub;
        for (int i = 0; i < n; ++i) sub.add_node(d_.label(i));
        bool s_has_self_loop = false;
        for (int v = s; v < n; ++v) {
            for (int w : d_.out(v)) {
                if (w >= s) sub.add_edge(v, w);
                if (v == s && w == s) s_has_self_loop = true;
            }
        }
        SccDecomposition scc = scc_condense(sub);
        int cs = scc.component_of[s];
        std::vector<char> mask(n, 0);
        int members = 0;
        for (int v = s; v < n; ++v) {
            if (scc.component_of[v] == cs) {
                mask[v] = 1;
                ++members;
            }
        }
        if (members == 1 && !s_has_self_loop) return {};
        return mask;
    }

    void unblock(int v) {
        blocked_[v] = false;
        for (int w : block_list_[v]) {
            if (blocked_[w]) unblock(w);
        }
        block_list_[v].clear();
    }

    bool circuit(int v) {
        bool found = false;
        path_.push_back(v);
        blocked_[v] = true;
        for (int w : d_.out(v)) {
            if (w < start_ || !scc_mask_[w]) continue;
            if (w == start_) {
                emit();
                found = true;
            } else if (!blocked_[w]) {
                if (circuit(w)) found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (int w : d_.out(v)) {
                if (w < start_ || !scc_mask_[w]) continue;
                auto& lst = block_list_[w];
                if (std::find(lst.begin(), lst.end(), v) == lst.end()) lst.push_back(v);
            }
        }
        path_.pop_back();
        return found;
    }

    void emit() {
        if (static_cast<long>(cycles_.size()) >= cap_) {
            Error err(ErrorCode::CycleCapExceeded,
                      "more than " + std::to_string(cap_) + " simple cycles");
            err.cap = cap_;
            err.partial = static_cast<long>(cycles_.size());
            throw err;
        }
        cycles_.push_back(path_);
    }

    const Digraph& d_;
    long cap_;
    int start_ = 0;
    std::vector<char> scc_mask_;
    std::vector<bool> blocked_;
    std::vector<std::vector<int>> block_list_;
    std::vector<int> path_;
    std::vector<std::vector<int>> cycles_;
};

}  // namespace

std::vector<std::vector<int>> enumerate_cycles(const Digraph& d, long cap) {
    if (cap <= 0) throw Error(ErrorCode::InvalidParams, "cycle cap must be positive");
    return CircuitSearch(d, cap).run();
}

long default_cycle_cap() {
    if (const char* env = std::getenv("SFSEL_CYCLE_CAP")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1000000;
}

}  // namespace sfsel
