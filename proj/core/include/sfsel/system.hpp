#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sfsel/errors.hpp"

namespace sfsel {

// Sparse zero/star pattern of an LTI system with dedicated inputs and
// outputs. States, inputs and outputs are 1-based everywhere, matching the
// on-disk format. A state edge (j, i) means state j influences state i.
struct StructuredSystem {
    int n = 0;
    std::set<std::pair<int, int>> state_edges;
    std::vector<int> input_state;   // input k+1 actuates input_state[k]
    std::vector<int> output_state;  // output k+1 senses output_state[k]

    int num_inputs() const { return static_cast<int>(input_state.size()); }
    int num_outputs() const { return static_cast<int>(output_state.size()); }

    int state_of_input(int input) const { return input_state.at(input - 1); }
    int state_of_output(int output) const { return output_state.at(output - 1); }

    bool has_state_edge(int from, int to) const {
        return state_edges.count({from, to}) > 0;
    }
};

// One feedback connection: output `output` fed back into input `input`.
struct FeedbackLink {
    int input = 0;
    int output = 0;

    friend bool operator==(const FeedbackLink&, const FeedbackLink&) = default;
    friend auto operator<=>(const FeedbackLink&, const FeedbackLink&) = default;
};

std::string to_string(const FeedbackLink& link);

// Cost of each feasible feedback connection. Infeasible pairs are simply
// absent; there is no sentinel value.
class CostMatrix {
  public:
    CostMatrix() = default;

    void set(int input, int output, double cost);
    bool feasible(int input, int output) const {
        return entries_.count({input, output}) > 0;
    }
    bool feasible(const FeedbackLink& link) const {
        return feasible(link.input, link.output);
    }
    std::optional<double> cost(int input, int output) const;
    std::optional<double> cost(const FeedbackLink& link) const {
        return cost(link.input, link.output);
    }

    const std::map<std::pair<int, int>, double>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

  private:
    std::map<std::pair<int, int>, double> entries_;  // (input, output) -> cost
};

using FeedbackSet = std::set<FeedbackLink>;

// Exact sum of link costs. Throws InfeasibleLink if any link has no entry.
double cost_of(const FeedbackSet& fs, const CostMatrix& costs);

enum class ViolationKind {
    IndexOutOfRange,
    DanglingInput,
    DanglingOutput,
    SharedState,  // warning: several dedicated inputs (or outputs) on one state
};

struct Violation {
    ViolationKind kind;
    bool warning = false;
    std::string detail;
};

// Structural well-formedness checks; violations are data, not failures.
// A system is well formed when no non-warning violation is reported.
std::vector<Violation> validate(const StructuredSystem& sys, const CostMatrix& costs);

bool well_formed(const std::vector<Violation>& violations);

struct SolveStats {
    std::size_t cycle_count = 0;
    std::size_t iterations = 0;
    double elapsed_seconds = 0.0;
};

// Forward declaration; defined in sfm.hpp.
struct SfmCertificate;

struct SolveReport {
    std::string solver;
    bool feasible = false;
    std::optional<FeedbackSet> solution;
    std::optional<double> cost;
    SolveStats stats;
    // Result of re-running the fixed-mode check on the returned set; always
    // populated (and passing) when feasible.
    std::shared_ptr<const SfmCertificate> certificate;
};

// Absolute tolerance for comparing summed costs.
inline constexpr double kCostTolerance = 1e-9;

inline bool cost_eq(double a, double b) {
    return (a > b ? a - b : b - a) <= kCostTolerance;
}

}  // namespace sfsel
