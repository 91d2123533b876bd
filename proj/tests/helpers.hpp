#pragma once

#include <cmath>
#include <unordered_map>
#include <vector>

#include "strsub/oracle.hpp"
#include "strsub/strings.hpp"

namespace strsub::test {

// f(M) = Σ weights[a] over the elements of M: string-linear, so marginal
// gains never depend on position.
inline ObjectiveOracle string_linear_oracle(std::vector<double> weights) {
    return ObjectiveOracle([weights](const ActionString& s) {
        double total = 0.0;
        for (Action a : s) total += weights[a];
        return total;
    });
}

// Two actions; greedy takes the locally better first action and forfeits
// the optimum (1,1).
inline ObjectiveOracle greedy_trap_oracle() {
    std::unordered_map<ActionString, double, ActionStringHash> values;
    values.emplace(ActionString{}, 0.0);
    values.emplace(ActionString{0}, 1.0);
    values.emplace(ActionString{1}, 0.9);
    values.emplace(ActionString{0, 0}, 1.0);
    values.emplace(ActionString{0, 1}, 1.0);
    values.emplace(ActionString{1, 1}, 2.0);
    return TableOracle(2, std::move(values), 0.0).as_objective();
}

// Weighted coverage over a fixed tiny universe; order-symmetric, monotone,
// backward monotone, and string submodular.
struct FixedCoverage {
    std::vector<double> weights{0.6, 1.0, 0.4, 0.8};
    std::vector<std::vector<int>> covers{{0, 1}, {1, 2}, {3}};

    double set_value(unsigned mask) const {
        double total = 0.0;
        for (std::size_t u = 0; u < weights.size(); ++u)
            if (mask & (1u << u)) total += weights[u];
        return total;
    }
    unsigned action_mask(Action a) const {
        unsigned mask = 0;
        for (int u : covers[a]) mask |= 1u << u;
        return mask;
    }
    ObjectiveOracle oracle() const {
        FixedCoverage copy = *this;
        return ObjectiveOracle([copy](const ActionString& s) {
            unsigned mask = 0;
            for (Action a : s) mask |= copy.action_mask(a);
            return copy.set_value(mask);
        });
    }
    int num_actions() const { return static_cast<int>(covers.size()); }
};

}  // namespace strsub::test
