#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sfsel {

enum class ErrorCode {
    InfeasibleLink,      // feedback link with no finite cost entry
    CycleCapExceeded,    // simple-cycle enumeration hit the configured cap
    AssumptionViolated,  // a solver precondition on the instance failed
    NotHierarchical,     // SCC condensation is not a forest of arborescences
    Uncoverable,         // some node lies in no cycle / no set covers it
    BudgetExceeded,      // oracle enumeration budget exhausted
    Infeasible,          // no feedback pattern achieves pole placement
    ParseError,          // malformed instance file
    InvalidParams,       // bad generator parameters
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const { return code_; }

    // Optional payloads, filled by the site that throws.
    std::vector<int> nodes;  // uncovered / offending node ids
    long cap = 0;            // cycle cap that was exceeded
    long partial = 0;        // how many cycles were found before giving up
    int line = 0;            // 1-based position for parse errors
    int column = 0;

  private:
    ErrorCode code_;
};

}  // namespace sfsel
