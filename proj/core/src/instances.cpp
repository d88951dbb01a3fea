#include "sfsel/instances.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sfsel {

std::pair<StructuredSystem, CostMatrix> from_set_cover(const WeightedSetCoverSpec& spec) {
    const int N = spec.universe_size;
    const int r = static_cast<int>(spec.num_sets());
    if (N < 1 || r < 1) {
        throw Error(ErrorCode::InvalidParams, "universe and set family must be nonempty");
    }
    if (spec.weights.size() != spec.sets.size()) {
        throw Error(ErrorCode::InvalidParams, "one weight per set required");
    }
    std::vector<char> covered(N + 1, 0);
    for (const auto& set : spec.sets) {
        for (int e : set) {
            if (e < 1 || e > N) {
                throw Error(ErrorCode::InvalidParams,
                            "set element " + std::to_string(e) + " outside universe");
            }
            covered[e] = 1;
        }
    }
    for (int e = 1; e <= N; ++e) {
        if (!covered[e]) {
            throw Error(ErrorCode::InvalidParams,
                        "element " + std::to_string(e) + " not covered by any set");
        }
    }
    for (double w : spec.weights) {
        if (!(w >= 0.0)) {
            throw Error(ErrorCode::InvalidParams, "set weights must be nonnegative");
        }
    }

    // States: 1..N elements, N+1..N+r sets, N+r+1 hub. The hub drives every
    // element, elements drive the sets containing them, and every state is
    // self damped. Input r+1 sits on the hub; buying set j's output there
    // costs w_j, while each set keeps a free self link.
    StructuredSystem sys;
    sys.n = N + r + 1;
    for (int i = 1; i <= sys.n; ++i) sys.state_edges.insert({i, i});
    for (int j = 1; j <= N; ++j) sys.state_edges.insert({N + r + 1, j});
    for (int k = 1; k <= r; ++k) {
        for (int e : spec.sets[k - 1]) sys.state_edges.insert({e, N + k});
    }
    for (int j = 1; j <= r + 1; ++j) sys.input_state.push_back(N + j);
    for (int i = 1; i <= r; ++i) sys.output_state.push_back(N + i);

    CostMatrix costs;
    for (int j = 1; j <= r; ++j) costs.set(r + 1, j, spec.weights[j - 1]);
    for (int i = 1; i <= r; ++i) costs.set(i, i, 0.0);
    return {std::move(sys), std::move(costs)};
}

ExtractedCover extract_cover(const FeedbackSet& fs, const WeightedSetCoverSpec& spec) {
    const int r = static_cast<int>(spec.num_sets());
    ExtractedCover out;
    for (int j = 1; j <= r; ++j) {
        if (fs.count({r + 1, j})) {
            out.set_indices.push_back(j);
            out.weight += spec.weights[j - 1];
        }
    }
    return out;
}

InstanceKind instance_kind_from_string(const std::string& name) {
    if (name == "dag") return InstanceKind::Dag;
    if (name == "hierarchy") return InstanceKind::Hierarchy;
    if (name == "backedge") return InstanceKind::Backedge;
    if (name == "selfdamped") return InstanceKind::SelfDamped;
    throw Error(ErrorCode::InvalidParams, "unknown instance kind: " + name);
}

const char* to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::Dag: return "dag";
        case InstanceKind::Hierarchy: return "hierarchy";
        case InstanceKind::Backedge: return "backedge";
        case InstanceKind::SelfDamped: return "selfdamped";
    }
    return "?";
}

namespace {

// All draws go through explicit arithmetic on the raw engine output so a
// given seed produces the same instance on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    int uniform(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool chance(double p) {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p;
    }

  private:
    std::mt19937_64 eng_;
};

void check_params(const RandomParams& params) {
    if (params.n < 1 || params.cost_min < 0 || params.cost_max < params.cost_min ||
        params.edge_density < 0.0 || params.edge_density > 1.0 ||
        params.io_density < 0.0 || params.io_density > 1.0 ||
        params.cost_density < 0.0 || params.cost_density > 1.0 ||
        params.max_scc_size < 1 || params.max_finite_entries < 0) {
        throw Error(ErrorCode::InvalidParams, "bad generator parameters");
    }
}

void attach_io(StructuredSystem& sys, Rng& rng, double io_density) {
    for (int s = 1; s <= sys.n; ++s) {
        if (rng.chance(io_density)) sys.input_state.push_back(s);
    }
    for (int s = 1; s <= sys.n; ++s) {
        if (rng.chance(io_density)) sys.output_state.push_back(s);
    }
    if (sys.input_state.empty()) sys.input_state.push_back(1);
    if (sys.output_state.empty()) sys.output_state.push_back(sys.n);
}

void draw_costs(CostMatrix& costs, Rng& rng, const RandomParams& params,
                const std::vector<std::pair<int, int>>& admissible) {
    std::vector<std::pair<int, int>> picked;
    for (const auto& pair : admissible) {
        if (rng.chance(params.cost_density)) picked.push_back(pair);
    }
    if (params.max_finite_entries > 0 &&
        static_cast<int>(picked.size()) > params.max_finite_entries) {
        // Deterministic thinning: drop uniformly chosen survivors.
        while (static_cast<int>(picked.size()) > params.max_finite_entries) {
            picked.erase(picked.begin() + rng.uniform(0, static_cast<int>(picked.size()) - 1));
        }
    }
    for (const auto& [i, j] : picked) {
        costs.set(i, j, rng.uniform(params.cost_min, params.cost_max));
    }
}

std::vector<std::vector<char>> reachability(const StructuredSystem& sys) {
    std::vector<std::vector<char>> reach(sys.n + 1, std::vector<char>(sys.n + 1, 0));
    std::vector<std::vector<int>> adj(sys.n + 1);
    for (const auto& [from, to] : sys.state_edges) adj[from].push_back(to);
    for (int s = 1; s <= sys.n; ++s) {
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

std::pair<StructuredSystem, CostMatrix> random_flat(InstanceKind kind,
                                                    const RandomParams& params,
                                                    Rng& rng) {
    StructuredSystem sys;
    sys.n = params.n;
    const bool damped = kind != InstanceKind::Dag;
    for (int i = 1; i <= sys.n; ++i) {
        for (int j = 1; j <= sys.n; ++j) {
            if (i == j) {
                if (damped || rng.chance(params.edge_density)) {
                    sys.state_edges.insert({i, j});
                }
            } else if (rng.chance(params.edge_density)) {
                sys.state_edges.insert({i, j});
            }
        }
    }
    attach_io(sys, rng, params.io_density);

    std::vector<std::pair<int, int>> admissible;
    if (kind == InstanceKind::Backedge) {
        auto reach = reachability(sys);
        for (int i = 1; i <= sys.num_inputs(); ++i) {
            for (int j = 1; j <= sys.num_outputs(); ++j) {
                if (reach[sys.state_of_input(i)][sys.state_of_output(j)]) {
                    admissible.push_back({i, j});
                }
            }
        }
    } else {
        for (int i = 1; i <= sys.num_inputs(); ++i) {
            for (int j = 1; j <= sys.num_outputs(); ++j) admissible.push_back({i, j});
        }
    }
    CostMatrix costs;
    draw_costs(costs, rng, params, admissible);
    return {std::move(sys), std::move(costs)};
}

std::pair<StructuredSystem, CostMatrix> random_hierarchy(const RandomParams& params,
                                                         Rng& rng) {
    const int ell = params.n;
    // Component k has parent in 0..k-1 (or none, giving a forest now and
    // then); states are laid out component by component.
    std::vector<int> parent(ell, -1);
    for (int k = 1; k < ell; ++k) {
        parent[k] = rng.chance(0.15) ? -1 : rng.uniform(0, k - 1);
    }
    std::vector<int> size(ell), first(ell);
    int n = 0;
    for (int k = 0; k < ell; ++k) {
        size[k] = rng.uniform(1, params.max_scc_size);
        first[k] = n + 1;
        n += size[k];
    }

    StructuredSystem sys;
    sys.n = n;
    for (int k = 0; k < ell; ++k) {
        if (size[k] == 1) {
            sys.state_edges.insert({first[k], first[k]});
        } else {
            for (int s = 0; s < size[k]; ++s) {
                sys.state_edges.insert({first[k] + s, first[k] + (s + 1) % size[k]});
            }
        }
        if (parent[k] != -1) {
            int from = first[parent[k]] + rng.uniform(0, size[parent[k]] - 1);
            int to = first[k] + rng.uniform(0, size[k] - 1);
            sys.state_edges.insert({from, to});
        }
    }
    // One dedicated input and output per component.
    for (int k = 0; k < ell; ++k) {
        sys.input_state.push_back(first[k] + rng.uniform(0, size[k] - 1));
    }
    for (int k = 0; k < ell; ++k) {
        sys.output_state.push_back(first[k] + rng.uniform(0, size[k] - 1));
    }

    // Ancestor pairs only; the self pair per component is always feasible so
    // every subtree stays coverable.
    std::vector<std::vector<int>> ancestors(ell);
    for (int k = 0; k < ell; ++k) {
        for (int a = k; a != -1; a = parent[a]) ancestors[k].push_back(a);
    }
    CostMatrix costs;
    for (int k = 0; k < ell; ++k) {
        costs.set(k + 1, k + 1, rng.uniform(params.cost_min, params.cost_max));
    }
    for (int k = 0; k < ell; ++k) {
        for (int a : ancestors[k]) {
            if (a == k) continue;
            if (rng.chance(params.cost_density)) {
                costs.set(a + 1, k + 1, rng.uniform(params.cost_min, params.cost_max));
            }
        }
    }
    return {std::move(sys), std::move(costs)};
}

}  // namespace

std::pair<StructuredSystem, CostMatrix> random_instance(InstanceKind kind,
                                                        const RandomParams& params,
                                                        std::uint64_t seed) {
    check_params(params);
    Rng rng(seed);
    if (kind == InstanceKind::Hierarchy) return random_hierarchy(params, rng);
    return random_flat(kind, params, rng);
}

std::string write_instance(const StructuredSystem& sys, const CostMatrix& costs) {
    nlohmann::json j;
    j["version"] = 1;
    j["n"] = sys.n;
    auto& edges = j["state_edges"];
    edges = nlohmann::json::array();
    for (const auto& [from, to] : sys.state_edges) edges.push_back({from, to});
    j["inputs"] = sys.input_state;
    j["outputs"] = sys.output_state;
    auto& cost_rows = j["costs"];
    cost_rows = nlohmann::json::array();
    for (const auto& [key, cost] : costs.entries()) {
        cost_rows.push_back({key.first, key.second, cost});
    }
    return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void parse_fail(const std::string& text, std::size_t byte,
                             const std::string& message) {
    Error err(ErrorCode::ParseError, message);
    err.line = 1;
    err.column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++err.line;
            err.column = 1;
        } else {
            ++err.column;
        }
    }
    throw err;
}

}  // namespace

std::pair<StructuredSystem, CostMatrix> read_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(text, e.byte, e.what());
    }
    if (!j.is_object()) parse_fail(text, 0, "instance file must hold a JSON object");

    static const std::set<std::string> known = {"version", "n", "state_edges",
                                                "inputs", "outputs", "costs"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) parse_fail(text, 0, "unknown key: " + key);
        (void)value;
    }
    try {
        if (j.at("version").get<int>() != 1) {
            parse_fail(text, 0, "unsupported version");
        }
        StructuredSystem sys;
        sys.n = j.at("n").get<int>();
        if (j.count("state_edges")) {
            for (const auto& e : j.at("state_edges")) {
                if (!e.is_array() || e.size() != 2) {
                    parse_fail(text, 0, "state edge must be [from, to]");
                }
                sys.state_edges.insert({e[0].get<int>(), e[1].get<int>()});
            }
        }
        sys.input_state = j.at("inputs").get<std::vector<int>>();
        sys.output_state = j.at("outputs").get<std::vector<int>>();

        CostMatrix costs;
        if (j.count("costs")) {
            for (const auto& row : j.at("costs")) {
                if (!row.is_array() || row.size() != 3) {
                    parse_fail(text, 0, "cost entry must be [input, output, cost]");
                }
                int input = row[0].get<int>();
                int output = row[1].get<int>();
                if (costs.feasible(input, output)) {
                    parse_fail(text, 0, "duplicate cost entry for (" +
                                            std::to_string(input) + "," +
                                            std::to_string(output) + ")");
                }
                costs.set(input, output, row[2].get<double>());
            }
        }
        return {std::move(sys), std::move(costs)};
    } catch (const nlohmann::json::exception& e) {
        parse_fail(text, 0, e.what());
    }
}

std::pair<StructuredSystem, CostMatrix> load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return read_instance(buffer.str());
}

void save_instance_file(const std::string& path, const StructuredSystem& sys,
                        const CostMatrix& costs) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot open " + path + " for writing");
    out << write_instance(sys, costs);
}

}  // namespace sfsel
