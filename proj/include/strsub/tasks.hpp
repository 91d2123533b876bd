#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "strsub/bounds.hpp"
#include "strsub/curvature.hpp"
#include "strsub/errors.hpp"
#include "strsub/oracle.hpp"
#include "strsub/strategies.hpp"

namespace strsub::tasks {

// ─── Subtask-accomplishment model ─────────────────────────────
// Choosing action a at stage j accomplishes subtask i with probability
// p_i^j(a); the objective is the expected fraction of subtasks done:
//   f((a_1,...,a_k)) = (1/n) Σ_i (1 - Π_j (1 - p_i^j(a_j))).
// Stage probabilities beyond the declared stages repeat the final stage,
// up to probe depth 3K-1, since curvature enumeration reaches past K.

struct TaskModel {
    int num_subtasks = 1;  // n
    int horizon = 1;       // K
    // probs[subtask][stage][action], stages extended to probe_depth()
    std::vector<std::vector<std::vector<double>>> probs;
    std::vector<double> lower;  // L(a), per action
    std::vector<double> upper;  // U(a), per action

    int num_actions() const { return static_cast<int>(lower.size()); }
    int probe_depth() const { return static_cast<int>(probs.front().size()); }

    double prob(int subtask, int stage, Action a) const {  // stage is 0-based
        return probs[subtask][stage][a];
    }

    double min_lower() const {
        return *std::min_element(lower.begin(), lower.end());
    }
    double max_upper() const {
        return *std::max_element(upper.begin(), upper.end());
    }
    // c(a) = (1 - U(a)) / (1 - L(a)), the per-action failure retention.
    double retention(Action a) const { return (1.0 - upper[a]) / (1.0 - lower[a]); }
    double min_retention() const {
        double c = 1.0;
        for (Action a = 0; a < num_actions(); ++a) c = std::min(c, retention(a));
        return c;
    }
};

inline TaskModel make_task_model(int num_subtasks, int horizon,
                                 std::vector<std::vector<std::vector<double>>> probs,
                                 std::vector<double> lower, std::vector<double> upper) {
    if (num_subtasks < 1 || horizon < 1) throw InputError("task model: n and K must be >= 1");
    const int num_actions = static_cast<int>(lower.size());
    if (num_actions < 1 || upper.size() != lower.size())
        throw InputError("task model: L and U must list one bound per action");
    for (Action a = 0; a < num_actions; ++a)
        if (!(0.0 < lower[a] && lower[a] < upper[a] && upper[a] < 1.0))
            throw InputError("task model: needs 0 < L(a) < U(a) < 1");
    if (static_cast<int>(probs.size()) != num_subtasks)
        throw InputError("task model: probs must have one row per subtask");

    const int depth = std::max(3 * horizon - 1, horizon);
    for (auto& stages : probs) {
        if (stages.empty()) throw InputError("task model: at least one stage per subtask");
        for (const auto& stage : stages)
            if (static_cast<int>(stage.size()) != num_actions)
                throw InputError("task model: each stage needs one probability per action");
        while (static_cast<int>(stages.size()) < depth) stages.push_back(stages.back());
        for (const auto& stage : stages)
            for (Action a = 0; a < num_actions; ++a)
                if (stage[a] < lower[a] - 1e-12 || stage[a] > upper[a] + 1e-12)
                    throw InputError("task model: probability outside [L(a), U(a)]");
    }

    TaskModel m;
    m.num_subtasks = num_subtasks;
    m.horizon = horizon;
    m.probs = std::move(probs);
    m.lower = std::move(lower);
    m.upper = std::move(upper);
    return m;
}

inline ObjectiveOracle task_objective(const TaskModel& m) {
    return ObjectiveOracle([m](const ActionString& s) {
        if (static_cast<int>(s.length()) > m.probe_depth())
            throw DepthExceededError("task objective: string longer than probe depth " +
                                     std::to_string(m.probe_depth()));
        double total = 0.0;
        for (int i = 0; i < m.num_subtasks; ++i) {
            double miss = 1.0;
            for (std::size_t j = 0; j < s.length(); ++j)
                miss *= 1.0 - m.prob(i, static_cast<int>(j), s[j]);
            total += 1.0 - miss;
        }
        return total / m.num_subtasks;
    });
}

// Upper bound (1 - L̂) Û / L̂ on the elemental forward curvature, valid for
// every probability assignment within the per-action bounds.
inline double eta_upper_bound(const TaskModel& m) {
    double l = m.min_lower(), u = m.max_upper();
    return (1.0 - l) * u / l;
}

// Sufficient condition for string submodularity: 1/L̂ - 1/Û <= 1.
inline bool submodular_sufficient(const TaskModel& m) {
    return 1.0 / m.min_lower() - 1.0 / m.max_upper() <= 1.0;
}

// Closed-form upper bound on the restricted backward curvature:
//   1 - min_{K <= k < 2K} ((1-Û)^k - (1-L̂)^{k+1}) / L̂, floored at 0.
// The value may exceed 1 (stage-increasing probabilities can make prepend
// gains negative); capping it would break the dominance over the
// enumerated curvature that makes it a usable stand-in for sigma(O).
inline double sigma_hat_closed_form(const TaskModel& m) {
    double l = m.min_lower(), u = m.max_upper();
    double worst = 1.0;
    for (int k = m.horizon; k < 2 * m.horizon; ++k) {
        double ratio = (std::pow(1.0 - u, k) - std::pow(1.0 - l, k + 1)) / l;
        worst = std::min(worst, ratio);
    }
    return std::max(1.0 - worst, 0.0);
}

// Closed-form upper bound 1 - (1-Û)^{i+K-1} on the restricted forward
// curvature at greedy stage i.
inline double epsilon_hat_closed_form(const TaskModel& m, int stage) {
    return 1.0 - std::pow(1.0 - m.max_upper(), stage + m.horizon - 1);
}

// Sufficient condition for the prefix-extension hypothesis
// f(G_i ⊕ O) >= f(O): the first greedy success probability must reach
// 1 - c^K where c is the smallest failure retention.
inline bool t2_hypothesis_sufficient(const TaskModel& m, double first_greedy_prob) {
    return first_greedy_prob >= 1.0 - std::pow(m.min_retention(), m.horizon);
}

// Golden-ratio window: L̂ >= 1 - 1/α and Û <= 1/α with α = (1+√5)/2.
// Inside the window the model is string submodular and satisfies the
// full-extension hypothesis 1 - Û >= (1 - L̂)².
inline bool golden_ratio_condition(const TaskModel& m) {
    double alpha = (1.0 + std::sqrt(5.0)) / 2.0;
    return m.min_lower() >= 1.0 - 1.0 / alpha && m.max_upper() <= 1.0 / alpha;
}

// ─── Stage-monotone special cases ─────────────────────────────

struct MonotoneSpecialCaseReport {
    bool non_increasing = false;
    bool non_decreasing = false;

    // Non-increasing branch: eta <= 1 - L̂ and the sharpened geometric bound.
    double eta_enumerated = 0.0;
    double eta_bound = 0.0;
    double improved_t2_bound = 0.0;
    bool eta_within_bound = false;

    // Non-decreasing branch: sigma(O) <= 1 - (1-Û)^{2K-1} and the sharpened
    // backward-curvature bound.
    double sigma_opt_enumerated = 0.0;
    double sigma_bound = 0.0;
    double improved_t1_bound = 0.0;
    bool sigma_within_bound = false;
};

// Detects whether every p_i^j(a) is non-increasing (or non-decreasing) over
// stages, asserts the corresponding closed-form curvature bound against the
// enumerated value, and reports the improved guaranteed ratio. Throws when
// the model is monotone in neither direction.
inline MonotoneSpecialCaseReport monotone_special_cases(const TaskModel& m,
                                                        double tol = kDefaultTol,
                                                        const EnumerationBudget& budget = {}) {
    MonotoneSpecialCaseReport report;
    report.non_increasing = true;
    report.non_decreasing = true;
    for (int i = 0; i < m.num_subtasks; ++i) {
        for (int j = 0; j + 1 < m.probe_depth(); ++j) {
            for (Action a = 0; a < m.num_actions(); ++a) {
                if (m.prob(i, j + 1, a) > m.prob(i, j, a)) report.non_increasing = false;
                if (m.prob(i, j + 1, a) < m.prob(i, j, a)) report.non_decreasing = false;
            }
        }
    }
    if (!report.non_increasing && !report.non_decreasing)
        throw NotMonotoneError("stage probabilities are monotone in neither direction");

    ObjectiveOracle f = task_objective(m);
    if (report.non_increasing) {
        report.eta_bound = 1.0 - m.min_lower();
        report.eta_enumerated =
            elemental_forward_curvature(f, m.num_actions(), 2 * m.horizon - 2, budget).value;
        report.eta_within_bound = report.eta_enumerated <= report.eta_bound + tol;
        report.improved_t2_bound = t2_bound(report.eta_bound, m.horizon);
    }
    if (report.non_decreasing) {
        report.sigma_bound = 1.0 - std::pow(1.0 - m.max_upper(), 2 * m.horizon - 1);
        ProblemSpec spec{m.num_actions(), m.horizon, f};
        auto [opt, value] = optimal_exhaustive(spec, budget, true);
        report.sigma_opt_enumerated =
            total_backward_curvature_wrt(f, opt, m.num_actions(), m.horizon, budget).value;
        report.sigma_within_bound =
            report.sigma_opt_enumerated <= report.sigma_bound + tol;
        report.improved_t1_bound = t1_bound_i(report.sigma_bound, m.horizon);
    }
    return report;
}

}  // namespace strsub::tasks
