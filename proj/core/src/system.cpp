#include "sfsel/system.hpp"

#include <cmath>
#include <map>

namespace sfsel {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InfeasibleLink: return "InfeasibleLink";
        case ErrorCode::CycleCapExceeded: return "CycleCapExceeded";
        case ErrorCode::AssumptionViolated: return "AssumptionViolated";
        case ErrorCode::NotHierarchical: return "NotHierarchical";
        case ErrorCode::Uncoverable: return "Uncoverable";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidParams: return "InvalidParams";
    }
    return "UnknownError";
}

std::string to_string(const FeedbackLink& link) {
    return "(y" + std::to_string(link.output) + ",u" + std::to_string(link.input) + ")";
}

void CostMatrix::set(int input, int output, double cost) {
    if (!(cost >= 0.0) || !std::isfinite(cost)) {
        throw Error(ErrorCode::InvalidParams,
                    "cost for " + to_string(FeedbackLink{input, output}) +
                        " must be finite and nonnegative");
    }
    entries_[{input, output}] = cost;
}

std::optional<double> CostMatrix::cost(int input, int output) const {
    auto it = entries_.find({input, output});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

double cost_of(const FeedbackSet& fs, const CostMatrix& costs) {
    double total = 0.0;
    for (const FeedbackLink& link : fs) {
        auto c = costs.cost(link);
        if (!c) {
            throw Error(ErrorCode::InfeasibleLink,
                        "link " + to_string(link) + " has no finite cost entry");
        }
        total += *c;
    }
    return total;
}

std::vector<Violation> validate(const StructuredSystem& sys, const CostMatrix& costs) {
    std::vector<Violation> out;
    auto bad_state = [&](int s) { return s < 1 || s > sys.n; };

    for (const auto& [from, to] : sys.state_edges) {
        if (bad_state(from) || bad_state(to)) {
            out.push_back({ViolationKind::IndexOutOfRange, false,
                           "state edge (" + std::to_string(from) + "," +
                               std::to_string(to) + ") outside 1.." + std::to_string(sys.n)});
        }
    }
    for (int i = 1; i <= sys.num_inputs(); ++i) {
        if (bad_state(sys.state_of_input(i))) {
            out.push_back({ViolationKind::DanglingInput, false,
                           "input u" + std::to_string(i) + " maps to state " +
                               std::to_string(sys.state_of_input(i))});
        }
    }
    for (int j = 1; j <= sys.num_outputs(); ++j) {
        if (bad_state(sys.state_of_output(j))) {
            out.push_back({ViolationKind::DanglingOutput, false,
                           "output y" + std::to_string(j) + " maps to state " +
                               std::to_string(sys.state_of_output(j))});
        }
    }
    for (const auto& [key, cost] : costs.entries()) {
        const auto& [input, output] = key;
        if (input < 1 || input > sys.num_inputs() || output < 1 ||
            output > sys.num_outputs()) {
            out.push_back({ViolationKind::IndexOutOfRange, false,
                           "cost entry " + to_string(FeedbackLink{input, output}) +
                               " outside " + std::to_string(sys.num_inputs()) + "x" +
                               std::to_string(sys.num_outputs())});
        }
        (void)cost;
    }

    // Several dedicated inputs (or outputs) may legitimately share a state;
    // surface it as a warning only.
    std::map<int, int> in_count, out_count;
    for (int i = 1; i <= sys.num_inputs(); ++i) ++in_count[sys.state_of_input(i)];
    for (int j = 1; j <= sys.num_outputs(); ++j) ++out_count[sys.state_of_output(j)];
    for (const auto& [state, cnt] : in_count) {
        if (cnt > 1 && !bad_state(state)) {
            out.push_back({ViolationKind::SharedState, true,
                           std::to_string(cnt) + " inputs actuate state x" +
                               std::to_string(state)});
        }
    }
    for (const auto& [state, cnt] : out_count) {
        if (cnt > 1 && !bad_state(state)) {
            out.push_back({ViolationKind::SharedState, true,
                           std::to_string(cnt) + " outputs sense state x" +
                               std::to_string(state)});
        }
    }
    return out;
}

bool well_formed(const std::vector<Violation>& violations) {
    for (const auto& v : violations) {
        if (!v.warning) return false;
    }
    return true;
}

}  // namespace sfsel
