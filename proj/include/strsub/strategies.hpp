#pragma once

#include <utility>
#include <vector>

#include "strsub/enumeration.hpp"
#include "strsub/errors.hpp"
#include "strsub/oracle.hpp"
#include "strsub/strings.hpp"

namespace strsub {

struct ProblemSpec {
    int num_actions = 0;
    int horizon = 0;  // K: maximum string length
    ObjectiveOracle objective;
};

// ─── GreedyTrace ──────────────────────────────────────────────
// Full record of a stagewise-greedy run: the strategy, the marginal gain
// captured at each stage, and the set of argmax actions per stage so that
// alternate tie policies can be audited. Ties are broken toward the lowest
// action id; tie sets list every action within `tie_tol` of the best gain.

struct GreedyTrace {
    ActionString strategy;
    std::vector<double> stage_gains;
    std::vector<std::vector<Action>> tie_sets;
    double base_value = 0.0;      // f(∅)
    bool reached_horizon = true;  // false when no feasible extension existed

    double value() const {
        double v = base_value;
        for (double g : stage_gains) v += g;
        return v;
    }
};

namespace detail {

// One greedy stage over an explicit candidate evaluation. `candidates`
// holds (action, objective value after taking it); returns the index of
// the winner (max value, lowest action id on exact ties).
inline std::size_t argmax_lowest_id(const std::vector<std::pair<Action, double>>& candidates) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (candidates[i].second > candidates[best].second) best = i;
    return best;
}

inline std::vector<Action> tie_set(const std::vector<std::pair<Action, double>>& candidates,
                                   double best_value, double tie_tol) {
    std::vector<Action> ties;
    for (const auto& [a, v] : candidates)
        if (v >= best_value - tie_tol) ties.push_back(a);
    return ties;
}

}  // namespace detail

// Stagewise greedy: at stage i the action maximizing
// f(G_{i-1} ⊕ (a)) over the whole action set.
inline GreedyTrace greedy(const ProblemSpec& spec, double tie_tol = kDefaultTol) {
    if (spec.num_actions < 1) throw InputError("greedy: empty action set");
    GreedyTrace trace;
    trace.base_value = spec.objective(ActionString{});
    double current = trace.base_value;
    for (int stage = 0; stage < spec.horizon; ++stage) {
        std::vector<std::pair<Action, double>> candidates;
        candidates.reserve(spec.num_actions);
        for (Action a = 0; a < spec.num_actions; ++a)
            candidates.emplace_back(a, spec.objective(append(trace.strategy, a)));
        std::size_t best = detail::argmax_lowest_id(candidates);
        trace.tie_sets.push_back(detail::tie_set(candidates, candidates[best].second, tie_tol));
        trace.stage_gains.push_back(candidates[best].second - current);
        current = candidates[best].second;
        trace.strategy.append(candidates[best].first);
    }
    return trace;
}

// Backward greedy: stage i maximizes f((a) ⊕ Ĝ_{i-1}) - f(Ĝ_{i-1}),
// growing the strategy by prepending. Same tie rule as greedy.
inline GreedyTrace backward_greedy(const ProblemSpec& spec, double tie_tol = kDefaultTol) {
    if (spec.num_actions < 1) throw InputError("backward_greedy: empty action set");
    GreedyTrace trace;
    trace.base_value = spec.objective(ActionString{});
    double current = trace.base_value;
    for (int stage = 0; stage < spec.horizon; ++stage) {
        std::vector<std::pair<Action, double>> candidates;
        candidates.reserve(spec.num_actions);
        for (Action a = 0; a < spec.num_actions; ++a)
            candidates.emplace_back(a, spec.objective(prepend(a, trace.strategy)));
        std::size_t best = detail::argmax_lowest_id(candidates);
        trace.tie_sets.push_back(detail::tie_set(candidates, candidates[best].second, tie_tol));
        trace.stage_gains.push_back(candidates[best].second - current);
        current = candidates[best].second;
        trace.strategy.prepend(candidates[best].first);
    }
    return trace;
}

// ─── Exhaustive optimum ───────────────────────────────────────
// Scans every string of length 1..K (plus the empty string) and returns a
// maximizer with its value. When the instance is known forward-monotone,
// only length-K strings need scanning. Ties prefer longer strings, then
// the lexicographically smallest, so forward-monotone instances always
// report a length-K optimum and results are reproducible.

inline std::pair<ActionString, double> optimal_exhaustive(
    const ProblemSpec& spec, const EnumerationBudget& budget = {},
    bool assume_forward_monotone = false) {
    int min_len = assume_forward_monotone ? spec.horizon : 0;
    require_budget(count_strings(spec.num_actions, min_len, spec.horizon), budget,
                   "optimal_exhaustive");
    ActionString best;
    bool have = false;
    double best_value = 0.0;
    for_each_string(spec.num_actions, min_len, spec.horizon, [&](const ActionString& s) {
        double v = spec.objective(s);
        if (!have || v > best_value ||
            (v == best_value && s.length() > best.length())) {
            best = s;
            best_value = v;
            have = true;
        }
    });
    return {best, best_value};
}

}  // namespace strsub
