#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace strsub {

// Absolute tolerance used by all checkers and bound comparisons.
inline constexpr double kDefaultTol = 1e-9;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation would require more oracle evaluations than allowed.
struct BudgetExceededError : Error {
    using Error::Error;
};

// Every candidate ratio of a curvature computation had a zero denominator.
struct DegenerateOracleError : Error {
    using Error::Error;
};

// An oracle was asked to evaluate a string longer than its defined depth.
struct DepthExceededError : Error {
    using Error::Error;
};

// Malformed or inconsistent instance data.
struct InputError : Error {
    using Error::Error;
};

// The permutation construction could not place an element; indicates a
// violated matroid axiom.
struct PermutationConstructionError : Error {
    using Error::Error;
};

// A model does not have the stage monotonicity a special case requires.
struct NotMonotoneError : Error {
    using Error::Error;
};

// Cap on oracle evaluations for a single enumeration-backed operation.
struct EnumerationBudget {
    std::uint64_t max_evals = 2'000'000;
};

inline void require_budget(std::uint64_t needed, const EnumerationBudget& budget,
                           const std::string& what) {
    if (needed > budget.max_evals) {
        throw BudgetExceededError(what + ": needs " + std::to_string(needed) +
                                  " evaluations, budget is " +
                                  std::to_string(budget.max_evals));
    }
}

}  // namespace strsub
