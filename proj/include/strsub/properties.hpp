#pragma once

#include <cstdint>
#include <vector>

#include "strsub/enumeration.hpp"
#include "strsub/errors.hpp"
#include "strsub/oracle.hpp"
#include "strsub/strings.hpp"

namespace strsub {

enum class PropertyKind {
    forward_monotone,
    diminishing_return,
    backward_monotone,
};

// One counterexample to a structural property. Which fields are used
// depends on the property: monotonicity violations carry (m, action);
// diminishing-return violations carry the prefix pair (m, n) and action.
struct PropertyViolation {
    ActionString m;
    ActionString n;
    Action action = -1;
    double lhs = 0.0;  // the side the property requires to be >= rhs
    double rhs = 0.0;
};

struct ViolationReport {
    PropertyKind kind{};
    int max_len = 0;
    std::uint64_t comparisons = 0;
    std::vector<PropertyViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Forward monotonicity, f(M ⊕ N) >= f(M), checked one appended action at
// a time over all |M| < max_len (single-step checks telescope to the full
// property within the scanned depth).
inline ViolationReport check_forward_monotone(const ObjectiveOracle& f, int num_actions,
                                              int max_len, double tol = kDefaultTol,
                                              const EnumerationBudget& budget = {}) {
    ViolationReport report;
    report.kind = PropertyKind::forward_monotone;
    report.max_len = max_len;
    require_budget(count_strings(num_actions, 0, max_len - 1) * (num_actions + 1), budget,
                   "check_forward_monotone");
    for_each_string(num_actions, 0, max_len - 1, [&](const ActionString& m) {
        double base = f(m);
        for (Action a = 0; a < num_actions; ++a) {
            double extended = f(append(m, a));
            ++report.comparisons;
            if (extended < base - tol)
                report.violations.push_back({m, ActionString{}, a, extended, base});
        }
    });
    return report;
}

// Backward monotonicity, f(M ⊕ N) >= f(N), scanned as prepend pairs.
inline ViolationReport check_backward_monotone(const ObjectiveOracle& f, int num_actions,
                                               int max_len, double tol = kDefaultTol,
                                               const EnumerationBudget& budget = {}) {
    ViolationReport report;
    report.kind = PropertyKind::backward_monotone;
    report.max_len = max_len;
    require_budget(count_strings(num_actions, 0, max_len - 1) * (num_actions + 1), budget,
                   "check_backward_monotone");
    for_each_string(num_actions, 0, max_len - 1, [&](const ActionString& m) {
        double base = f(m);
        for (Action a = 0; a < num_actions; ++a) {
            double extended = f(prepend(a, m));
            ++report.comparisons;
            if (extended < base - tol)
                report.violations.push_back({m, ActionString{}, a, extended, base});
        }
    });
    return report;
}

// Diminishing returns over prefix pairs: for every M ⪯ N with |N| < max_len
// and every action, the gain after M must be at least the gain after N.
inline ViolationReport check_diminishing_return(const ObjectiveOracle& f, int num_actions,
                                                int max_len, double tol = kDefaultTol,
                                                const EnumerationBudget& budget = {}) {
    ViolationReport report;
    report.kind = PropertyKind::diminishing_return;
    report.max_len = max_len;
    require_budget(count_strings(num_actions, 0, max_len - 1) *
                       static_cast<std::uint64_t>(max_len + 1) * (num_actions + 1),
                   budget, "check_diminishing_return");
    for_each_string(num_actions, 0, max_len - 1, [&](const ActionString& n) {
        double at_n = f(n);
        for (Action a = 0; a < num_actions; ++a) {
            double gain_n = f(append(n, a)) - at_n;
            for (std::size_t cut = 0; cut < n.length(); ++cut) {
                ActionString m = n.prefix(cut);
                double gain_m = f(append(m, a)) - f(m);
                ++report.comparisons;
                if (gain_m < gain_n - tol)
                    report.violations.push_back({m, n, a, gain_m, gain_n});
            }
        }
    });
    return report;
}

// Checks the singleton decomposition bound f(N) <= Σ_i f((n_i)) for every
// string up to max_len; holds whenever the oracle is string submodular.
inline ViolationReport check_singleton_decomposition(const ObjectiveOracle& f,
                                                     int num_actions, int max_len,
                                                     double tol = kDefaultTol,
                                                     const EnumerationBudget& budget = {}) {
    ViolationReport report;
    report.kind = PropertyKind::forward_monotone;
    report.max_len = max_len;
    require_budget(count_strings(num_actions, 0, max_len) * 2, budget,
                   "check_singleton_decomposition");
    std::vector<double> singleton(num_actions);
    for (Action a = 0; a < num_actions; ++a) singleton[a] = f(ActionString{a});
    for_each_string(num_actions, 1, max_len, [&](const ActionString& n) {
        double sum = 0.0;
        for (Action a : n) sum += singleton[a];
        ++report.comparisons;
        double value = f(n);
        if (value > sum + tol)
            report.violations.push_back({n, ActionString{}, -1, sum, value});
    });
    return report;
}

}  // namespace strsub
