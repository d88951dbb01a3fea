#include "sfsel/solve.hpp"

#include <chrono>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sfsel/sfm.hpp"

namespace sfsel {

Algo algo_from_string(const std::string& name) {
    if (name == "auto") return Algo::Auto;
    if (name == "potential") return Algo::Potential;
    if (name == "backedge") return Algo::Backedge;
    if (name == "hierarchical") return Algo::Hierarchical;
    if (name == "oracle") return Algo::Oracle;
    throw Error(ErrorCode::InvalidParams, "unknown algorithm: " + name);
}

const char* to_string(Algo algo) {
    switch (algo) {
        case Algo::Auto: return "auto";
        case Algo::Potential: return "potential";
        case Algo::Backedge: return "backedge";
        case Algo::Hierarchical: return "hierarchical";
        case Algo::Oracle: return "oracle";
    }
    return "?";
}

namespace {

SolveOutcome run_potential(const StructuredSystem& sys, const CostMatrix& costs,
                           const SolveOptions& options) {
    auto started = std::chrono::steady_clock::now();
    SolveOutcome out;
    out.route = Algo::Potential;
    out.report.solver = "potential";

    CondensedGraph cg = condense(sys, costs);
    long cap = options.cycle_cap > 0 ? options.cycle_cap : default_cycle_cap();
    std::vector<Cycle> cycles = cycles_of(cg, cap);
    out.report.stats.cycle_count = cycles.size();

    // A component outside every cycle can never satisfy the SCC condition.
    std::set<int> on_cycle;
    for (const Cycle& c : cycles) on_cycle.insert(c.nodes.begin(), c.nodes.end());
    if (static_cast<int>(on_cycle.size()) < cg.components()) {
        out.report.feasible = false;
        return out;
    }

    PotentialOptions popts;
    popts.merge = options.merge;
    popts.trace = options.trace;
    PotentialResult res = potential_solve(cycles, edge_costs(cg), popts);

    FeedbackSet fs(res.edges.begin(), res.edges.end());
    out.report.feasible = true;
    out.report.solution = fs;
    out.report.cost = cost_of(fs, costs);
    out.report.stats.iterations = res.iterations;
    out.report.stats.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    out.potential = std::move(res);

    if (options.trace) {
        std::ostringstream os;
        for (std::size_t it = 0; it < out.potential->trace.size(); ++it) {
            const PotentialIteration& pi = out.potential->trace[it];
            os << "iteration " << it + 1 << "\n";
            for (const auto& [cycle, pot] : pi.pots) {
                os << "  pot(cycle " << cycle << ") = " << pot
                   << (cycle == pi.selected_cycle ? "   <- selected" : "") << "\n";
            }
        }
        out.trace_text = os.str();
    }
    return out;
}

SolveOutcome run_backedge(const StructuredSystem& sys, const CostMatrix& costs,
                          const SolveOptions& options) {
    SolveOutcome out;
    out.route = Algo::Backedge;
    BackedgeOptions bopts;
    bopts.project = options.project;
    BackedgeOutcome res = backedge_solve(sys, costs, bopts);
    out.report = res.report;
    if (options.trace) {
        std::ostringstream os;
        os << set_cover_to_json(res.instance) << "\nchosen sets:";
        for (int d : res.chosen_sets) os << " " << d + 1;
        os << "\n";
        out.trace_text = os.str();
    }
    return out;
}

SolveOutcome run_hierarchical(const StructuredSystem& sys, const CostMatrix& costs,
                              const SolveOptions& options) {
    SolveOutcome out;
    out.route = Algo::Hierarchical;
    HierarchicalOutcome res = hierarchical_solve(sys, costs);
    out.report = res.report;
    if (options.trace) out.trace_text = dp_table_to_text(res);
    return out;
}

SolveOutcome run_oracle(const StructuredSystem& sys, const CostMatrix& costs,
                        const SolveOptions& options) {
    SolveOutcome out;
    out.route = Algo::Oracle;
    out.report = brute_force_problem1(sys, costs, options.budget);
    return out;
}

}  // namespace

SolveOutcome solve(const StructuredSystem& sys, const CostMatrix& costs,
                   const SolveOptions& options) {
    SolveOutcome out;
    switch (options.algo) {
        case Algo::Potential: out = run_potential(sys, costs, options); break;
        case Algo::Backedge: out = run_backedge(sys, costs, options); break;
        case Algo::Hierarchical: out = run_hierarchical(sys, costs, options); break;
        case Algo::Oracle: out = run_oracle(sys, costs, options); break;
        case Algo::Auto: {
            try {
                out = run_hierarchical(sys, costs, options);
                break;
            } catch (const Error& err) {
                if (err.code() != ErrorCode::NotHierarchical &&
                    err.code() != ErrorCode::AssumptionViolated) {
                    throw;
                }
            }
            if (check_backedge(sys, costs).empty()) {
                out = run_backedge(sys, costs, options);
                break;
            }
            out = run_potential(sys, costs, options);
            break;
        }
    }

    // No unverified answer leaves the solver.
    if (out.report.feasible) {
        if (!out.report.certificate) {
            out.report.certificate =
                std::make_shared<SfmCertificate>(has_no_sfm(sys, *out.report.solution));
        }
        if (!out.report.certificate->pass) {
            throw Error(ErrorCode::Infeasible,
                        "solver returned a set failing the fixed-mode check");
        }
    }
    return out;
}

std::string report_to_json(const SolveOutcome& outcome) {
    nlohmann::json j;
    j["solver"] = outcome.report.solver;
    j["route"] = to_string(outcome.route);
    j["feasible"] = outcome.report.feasible;
    if (outcome.report.feasible) {
        j["cost"] = *outcome.report.cost;
        auto& links = j["links"];
        links = nlohmann::json::array();
        for (const FeedbackLink& link : *outcome.report.solution) {
            links.push_back({{"input", link.input}, {"output", link.output}});
        }
        j["certificate"] = nlohmann::json::parse(
            certificate_to_json(*outcome.report.certificate));
    }
    j["stats"] = {{"cycles", outcome.report.stats.cycle_count},
                  {"iterations", outcome.report.stats.iterations}};
    return j.dump(2);
}

std::string report_to_text(const SolveOutcome& outcome) {
    std::ostringstream os;
    os << "route: " << to_string(outcome.route) << "\n";
    if (!outcome.report.feasible) {
        os << "infeasible: arbitrary pole placement is not possible\n";
        return os.str();
    }
    os << "cost: " << *outcome.report.cost << "\nlinks:";
    for (const FeedbackLink& link : *outcome.report.solution) {
        os << " " << to_string(link);
    }
    os << "\nverified: " << (outcome.report.certificate->pass ? "yes" : "no") << "\n";
    os << "elapsed: " << outcome.report.stats.elapsed_seconds << " s\n";
    return os.str();
}

}  // namespace sfsel
