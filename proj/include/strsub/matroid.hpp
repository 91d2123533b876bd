#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "strsub/enumeration.hpp"
#include "strsub/errors.hpp"
#include "strsub/oracle.hpp"
#include "strsub/strategies.hpp"
#include "strsub/strings.hpp"

namespace strsub {

// ─── StringMatroid ────────────────────────────────────────────
// A non-uniform structure given as an independence oracle plus its rank
// (the maximum independent string length). Validated instances satisfy:
//   1) the empty string is independent;
//   2) hereditary: every subsequence of an independent string is independent;
//   3) augmentation: for independent M, N with |M| < |N|, some element x of
//      N can be appended to M keeping independence;
// and some string of length exactly `rank` is independent.

struct StringMatroid {
    std::function<bool(const ActionString&)> is_independent;
    int rank = 0;
};

inline StringMatroid uniform_matroid(int rank) {
    return {[rank](const ActionString& s) {
                return static_cast<int>(s.length()) <= rank;
            },
            rank};
}

// Per-action repetition caps: independent iff |M| <= rank and no action
// occurs more often than its cap.
inline StringMatroid max_repeats_matroid(std::vector<int> caps, int rank) {
    return {[caps = std::move(caps), rank](const ActionString& s) {
                if (static_cast<int>(s.length()) > rank) return false;
                std::vector<int> counts(caps.size(), 0);
                for (Action a : s) {
                    if (a < 0 || a >= static_cast<int>(caps.size())) return false;
                    if (++counts[a] > caps[a]) return false;
                }
                return true;
            },
            rank};
}

// Explicit forbidden-prefix list: independent iff |M| <= rank and no listed
// string is a prefix of M. Arbitrary lists are not automatically valid
// matroids; run validate_axioms before relying on one.
inline StringMatroid prefix_forbidden_matroid(std::vector<ActionString> forbidden,
                                              int rank) {
    return {[forbidden = std::move(forbidden), rank](const ActionString& s) {
                if (static_cast<int>(s.length()) > rank) return false;
                for (const ActionString& f : forbidden)
                    if (is_prefix(f, s)) return false;
                return true;
            },
            rank};
}

// ─── Axiom validation ─────────────────────────────────────────

enum class MatroidAxiom {
    non_empty,
    hereditary,
    augmentation,
    has_maximal_string,
};

struct MatroidViolation {
    MatroidAxiom axiom{};
    ActionString m;  // independent string involved
    ActionString n;  // counterpart (deleted-from or augmentation source)
    std::string detail;
};

struct MatroidValidationReport {
    int rank = 0;
    std::uint64_t independent_count = 0;
    std::uint64_t comparisons = 0;
    std::vector<MatroidViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Exhaustively checks the axioms over all strings of length <= rank.
// Hereditary closure under single deletions implies closure under the full
// subsequence relation, so only single deletions are tested.
inline MatroidValidationReport validate_axioms(const StringMatroid& m, int num_actions,
                                               const EnumerationBudget& budget = {}) {
    MatroidValidationReport report;
    report.rank = m.rank;
    std::uint64_t space = count_strings(num_actions, 0, m.rank);
    require_budget(space * (m.rank + 1) + space * space, budget, "validate_axioms");

    std::vector<ActionString> independent;
    for_each_string(num_actions, 0, m.rank, [&](const ActionString& s) {
        if (m.is_independent(s)) independent.push_back(s);
    });
    report.independent_count = independent.size();

    if (independent.empty() || !m.is_independent(ActionString{})) {
        report.violations.push_back({MatroidAxiom::non_empty, {}, {},
                                     "the empty string is not independent"});
        return report;
    }

    bool has_maximal = false;
    for (const ActionString& s : independent)
        if (static_cast<int>(s.length()) == m.rank) has_maximal = true;
    if (!has_maximal)
        report.violations.push_back({MatroidAxiom::has_maximal_string, {}, {},
                                     "no independent string of length rank"});

    for (const ActionString& s : independent) {
        for (std::size_t pos = 0; pos < s.length(); ++pos) {
            ActionString shorter = s.without(pos);
            ++report.comparisons;
            if (!m.is_independent(shorter)) {
                report.violations.push_back(
                    {MatroidAxiom::hereditary, s, shorter,
                     "deleting position " + std::to_string(pos) +
                         " leaves a dependent string"});
            }
        }
    }

    for (const ActionString& shorter : independent) {
        for (const ActionString& longer : independent) {
            if (shorter.length() >= longer.length()) continue;
            ++report.comparisons;
            bool extendable = false;
            for (Action x : longer) {
                if (m.is_independent(append(shorter, x))) {
                    extendable = true;
                    break;
                }
            }
            if (!extendable)
                report.violations.push_back({MatroidAxiom::augmentation, shorter, longer,
                                             "no element of the longer string extends"});
        }
    }
    return report;
}

// ─── Constrained strategies ───────────────────────────────────

// Stagewise greedy restricted to feasible extensions: stage i maximizes the
// marginal gain over actions a with G_{i-1} ⊕ (a) independent. Stops early
// (reached_horizon = false) if no feasible extension exists, which cannot
// happen for a validated matroid.
inline GreedyTrace constrained_greedy(const ProblemSpec& spec, const StringMatroid& matroid,
                                      double tie_tol = kDefaultTol) {
    GreedyTrace trace;
    trace.base_value = spec.objective(ActionString{});
    double current = trace.base_value;
    for (int stage = 0; stage < matroid.rank; ++stage) {
        std::vector<std::pair<Action, double>> candidates;
        for (Action a = 0; a < spec.num_actions; ++a) {
            ActionString extended = append(trace.strategy, a);
            if (matroid.is_independent(extended))
                candidates.emplace_back(a, spec.objective(extended));
        }
        if (candidates.empty()) {
            trace.reached_horizon = false;
            break;
        }
        std::size_t best = detail::argmax_lowest_id(candidates);
        trace.tie_sets.push_back(detail::tie_set(candidates, candidates[best].second, tie_tol));
        trace.stage_gains.push_back(candidates[best].second - current);
        current = candidates[best].second;
        trace.strategy.append(candidates[best].first);
    }
    return trace;
}

// Exhaustive maximizer over all independent strings. Tie rule matches
// optimal_exhaustive: prefer longer, then lexicographically smaller.
inline std::pair<ActionString, double> constrained_optimal(
    const ProblemSpec& spec, const StringMatroid& matroid,
    const EnumerationBudget& budget = {}) {
    require_budget(count_strings(spec.num_actions, 0, matroid.rank) * 2, budget,
                   "constrained_optimal");
    ActionString best;
    bool have = false;
    double best_value = 0.0;
    for_each_string(spec.num_actions, 0, matroid.rank, [&](const ActionString& s) {
        if (!matroid.is_independent(s)) return;
        double v = spec.objective(s);
        if (!have || v > best_value ||
            (v == best_value && s.length() > best.length())) {
            best = s;
            best_value = v;
            have = true;
        }
    });
    if (!have) throw InputError("constrained_optimal: no independent string");
    return {best, best_value};
}

// ─── Greedy-dominating permutation ────────────────────────────
// For an independent string N of full rank, builds a permutation P(N) such
// that at every stage i the placed element's marginal gain on the greedy
// prefix G_{i-1} is at most the greedy stage gain. Construction walks
// backwards from position |N|: among the not-yet-placed elements of N
// whose appension to G_{i-1} is independent (augmentation guarantees one),
// it picks the one with the largest marginal gain, breaking ties toward
// the latest position in N, so a fully tied stage keeps N's own order.

struct PermutationCertificate {
    ActionString original;
    ActionString permuted;
    std::vector<bool> per_stage_checks;   // gain(P(N)_i | G_{i-1}) <= greedy gain_i + tol
    std::vector<double> stage_margins;    // greedy gain_i - gain(P(N)_i | G_{i-1})

    bool all_pass() const {
        for (bool ok : per_stage_checks)
            if (!ok) return false;
        return true;
    }
};

inline PermutationCertificate build_greedy_dominating_permutation(
    const ObjectiveOracle& f, const StringMatroid& matroid, const GreedyTrace& greedy_trace,
    const ActionString& n, double tol = kDefaultTol) {
    const std::size_t k = n.length();
    if (k != greedy_trace.strategy.length())
        throw InputError("permutation construction needs |N| equal to the greedy length");

    std::vector<Action> placed(k, -1);
    std::vector<bool> used(k, false);
    for (std::size_t stage = k; stage >= 1; --stage) {
        const ActionString prefix = greedy_trace.strategy.prefix(stage - 1);
        const double at_prefix = f(prefix);
        bool have = false;
        double best_gain = 0.0;
        std::size_t best_pos = 0;
        for (std::size_t pos = 0; pos < k; ++pos) {
            if (used[pos]) continue;
            if (!matroid.is_independent(append(prefix, n[pos]))) continue;
            double gain = f(append(prefix, n[pos])) - at_prefix;
            if (!have || gain > best_gain || (gain == best_gain && pos > best_pos)) {
                best_gain = gain;
                best_pos = pos;
                have = true;
            }
        }
        if (!have)
            throw PermutationConstructionError(
                "no placeable element at stage " + std::to_string(stage) +
                "; the matroid violates the augmentation axiom");
        used[best_pos] = true;
        placed[stage - 1] = n[best_pos];
    }

    PermutationCertificate cert;
    cert.original = n;
    cert.permuted = ActionString(std::move(placed));
    for (std::size_t stage = 1; stage <= k; ++stage) {
        ActionString prefix = greedy_trace.strategy.prefix(stage - 1);
        double gain = f(append(prefix, cert.permuted[stage - 1])) - f(prefix);
        double margin = greedy_trace.stage_gains[stage - 1] - gain;
        cert.stage_margins.push_back(margin);
        cert.per_stage_checks.push_back(margin >= -tol);
    }
    return cert;
}

}  // namespace strsub
