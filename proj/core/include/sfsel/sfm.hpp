#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfsel/graph.hpp"
#include "sfsel/system.hpp"

namespace sfsel {

// Per-state witness for the SCC condition: the closed-loop SCC the state
// belongs to and, when passing, the smallest feedback link whose output and
// input nodes both lie inside that SCC.
struct ConditionAWitness {
    int state = 0;
    int scc_index = 0;
    std::optional<FeedbackLink> edge;
};

struct ConditionAResult {
    bool pass = false;
    std::vector<ConditionAWitness> witnesses;  // one per state, ascending
    std::vector<int> failing_states;
};

struct ConditionBResult {
    bool pass = false;
    int matching_size = 0;
    // Matched (left, right) label pairs when perfect, deficient right-side
    // labels otherwise.
    std::vector<std::pair<std::string, std::string>> matching;
    std::vector<std::string> deficient;
};

struct SfmCertificate {
    bool pass = false;
    ConditionAResult condition_a;
    ConditionBResult condition_b;
};

// Condition (a): every state lies in an SCC of D(A,B,C,K) that contains a
// feedback edge (both the output node and the input node of the edge in the
// same SCC).
ConditionAResult check_condition_a(const StructuredSystem& sys, const FeedbackSet& fs);

// Condition (b): B(A,B,C,K) has a perfect matching, equivalently disjoint
// cycles span all state nodes.
ConditionBResult check_condition_b(const StructuredSystem& sys, const FeedbackSet& fs);

// Both conditions; the closed loop admits arbitrary pole placement iff pass.
SfmCertificate has_no_sfm(const StructuredSystem& sys, const FeedbackSet& fs);

std::string certificate_to_json(const SfmCertificate& cert);

}  // namespace sfsel
