#pragma once

#include <optional>
#include <string>

#include "sfsel/approx.hpp"
#include "sfsel/backedge.hpp"
#include "sfsel/hierarchy.hpp"
#include "sfsel/oracle.hpp"
#include "sfsel/system.hpp"

namespace sfsel {

enum class Algo { Auto, Potential, Backedge, Hierarchical, Oracle };

Algo algo_from_string(const std::string& name);
const char* to_string(Algo algo);

struct SolveOptions {
    Algo algo = Algo::Auto;
    bool merge = true;         // potential: merge cycles first
    bool trace = false;
    bool project = false;      // backedge: drop violating cost entries
    OracleBudget budget;
    long cycle_cap = 0;        // 0 = default_cycle_cap()
};

struct SolveOutcome {
    SolveReport report;
    Algo route = Algo::Auto;        // the algorithm that actually ran
    std::string trace_text;         // populated when options.trace is set
    std::optional<PotentialResult> potential;
};

// Full pipeline for one instance. Auto tries the exact tree solver first,
// then the back-edge set-cover route, then the potential-function
// approximation. Every feasible answer is re-verified against the fixed-mode
// conditions before it is returned.
SolveOutcome solve(const StructuredSystem& sys, const CostMatrix& costs,
                   const SolveOptions& options = {});

std::string report_to_json(const SolveOutcome& outcome);
std::string report_to_text(const SolveOutcome& outcome);

}  // namespace sfsel
