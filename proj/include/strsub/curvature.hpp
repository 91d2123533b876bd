#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "strsub/enumeration.hpp"
#include "strsub/errors.hpp"
#include "strsub/oracle.hpp"
#include "strsub/strings.hpp"

namespace strsub {

// ─── Curvature reports ────────────────────────────────────────
// Every curvature quantity is an exact maximum over a bounded enumeration
// of strings. A report carries the maximizing witness so the defining
// ratio can be re-evaluated independently; `recompute_ratio` does exactly
// that and must reproduce `value` within tolerance.

enum class CurvatureKind {
    total_backward,       // sigma: prepended singleton loss
    total_backward_wrt,   // sigma(M): prepend targets fixed M
    total_forward,        // epsilon: appended singleton loss
    total_forward_wrt,    // epsilon(M): append base fixed at M
    elemental,            // eta: gain ratio across one intervening action
    restricted_backward,  // sigma_hat: |M| in [K, 2K)
    restricted_forward,   // epsilon_hat_i: |M| in [i, i+K)
    restricted_elemental  // eta_hat: |M| <= 2K-2
};

inline const char* curvature_kind_name(CurvatureKind kind) {
    switch (kind) {
        case CurvatureKind::total_backward: return "sigma";
        case CurvatureKind::total_backward_wrt: return "sigma_wrt";
        case CurvatureKind::total_forward: return "epsilon";
        case CurvatureKind::total_forward_wrt: return "epsilon_wrt";
        case CurvatureKind::elemental: return "eta";
        case CurvatureKind::restricted_backward: return "sigma_hat";
        case CurvatureKind::restricted_forward: return "epsilon_hat_i";
        case CurvatureKind::restricted_elemental: return "eta_hat";
    }
    return "?";
}

struct CurvatureReport {
    CurvatureKind kind{};
    double value = 0.0;
    Action witness_a = -1;       // the prepended/appended action, or a_i
    Action witness_b = -1;       // a_j for elemental kinds
    ActionString witness_m;      // maximizing M (maximizing N for *_wrt kinds)
    ActionString fixed_m;        // the fixed string of *_wrt kinds
    int search_len = 0;          // largest length enumerated for the varying string
    std::uint64_t candidates = 0;
    std::uint64_t skipped_zero_denominators = 0;
};

// Re-evaluates the defining ratio at the report's witness.
inline double recompute_ratio(const CurvatureReport& r, const ObjectiveOracle& f) {
    switch (r.kind) {
        case CurvatureKind::total_backward:
        case CurvatureKind::restricted_backward: {
            ActionString a{r.witness_a};
            return 1.0 - (f(concat(a, r.witness_m)) - f(r.witness_m)) / f(a);
        }
        case CurvatureKind::total_backward_wrt:
            return 1.0 - (f(concat(r.witness_m, r.fixed_m)) - f(r.fixed_m)) / f(r.witness_m);
        case CurvatureKind::total_forward:
        case CurvatureKind::restricted_forward: {
            ActionString a{r.witness_a};
            return 1.0 - (f(concat(r.witness_m, a)) - f(r.witness_m)) / f(a);
        }
        case CurvatureKind::total_forward_wrt:
            return 1.0 - (f(concat(r.fixed_m, r.witness_m)) - f(r.fixed_m)) / f(r.witness_m);
        case CurvatureKind::elemental:
        case CurvatureKind::restricted_elemental: {
            ActionString mi = append(r.witness_m, r.witness_a);
            return (f(append(mi, r.witness_b)) - f(mi)) /
                   (f(append(r.witness_m, r.witness_b)) - f(r.witness_m));
        }
    }
    return 0.0;
}

namespace detail {

struct RunningMax {
    bool have = false;
    double value = 0.0;

    bool offer(double v) {
        if (!have || v > value) {
            value = v;
            have = true;
            return true;
        }
        return false;
    }
};

// max over actions a and strings M in the length window of
//   1 - (f((a) ⊕ M) - f(M)) / f((a))        (prepend_side = true)
//   1 - (f(M ⊕ (a)) - f(M)) / f((a))        (prepend_side = false)
inline CurvatureReport singleton_loss_curvature(const ObjectiveOracle& f, int num_actions,
                                                int min_len, int max_len, bool prepend_side,
                                                CurvatureKind kind,
                                                const EnumerationBudget& budget) {
    require_budget(count_strings(num_actions, min_len, max_len) * (num_actions + 1) +
                       num_actions,
                   budget, curvature_kind_name(kind));
    CurvatureReport report;
    report.kind = kind;
    report.search_len = max_len;
    std::vector<double> singleton(num_actions);
    for (Action a = 0; a < num_actions; ++a) singleton[a] = f(ActionString{a});
    RunningMax best;
    for_each_string(num_actions, min_len, max_len, [&](const ActionString& m) {
        double at_m = f(m);
        for (Action a = 0; a < num_actions; ++a) {
            if (singleton[a] == 0.0) {
                ++report.skipped_zero_denominators;
                continue;
            }
            double moved = prepend_side ? f(prepend(a, m)) : f(append(m, a));
            ++report.candidates;
            if (best.offer(1.0 - (moved - at_m) / singleton[a])) {
                report.witness_a = a;
                report.witness_m = m;
            }
        }
    });
    if (!best.have)
        throw DegenerateOracleError(std::string(curvature_kind_name(kind)) +
                                    ": every singleton value is zero");
    report.value = best.value;
    return report;
}

}  // namespace detail

// Total backward curvature: worst relative loss of a singleton's value
// when prepended to any string of length <= search_len.
inline CurvatureReport total_backward_curvature(const ObjectiveOracle& f, int num_actions,
                                                int search_len,
                                                const EnumerationBudget& budget = {}) {
    return detail::singleton_loss_curvature(f, num_actions, 0, search_len, true,
                                            CurvatureKind::total_backward, budget);
}

// Total forward curvature: mirror of the above with the singleton appended.
inline CurvatureReport total_forward_curvature(const ObjectiveOracle& f, int num_actions,
                                               int search_len,
                                               const EnumerationBudget& budget = {}) {
    return detail::singleton_loss_curvature(f, num_actions, 0, search_len, false,
                                            CurvatureKind::total_forward, budget);
}

// Restricted backward curvature over K <= |M| < 2K; dominates the backward
// curvature with respect to any optimal strategy.
inline CurvatureReport restricted_backward_curvature(const ObjectiveOracle& f,
                                                     int num_actions, int horizon,
                                                     const EnumerationBudget& budget = {}) {
    return detail::singleton_loss_curvature(f, num_actions, horizon, 2 * horizon - 1, true,
                                            CurvatureKind::restricted_backward, budget);
}

// Restricted forward curvature over i <= |M| < i+K; dominates the forward
// curvature with respect to the greedy prefix of length i.
inline CurvatureReport restricted_forward_curvature_at(const ObjectiveOracle& f,
                                                       int num_actions, int stage,
                                                       int horizon,
                                                       const EnumerationBudget& budget = {}) {
    return detail::singleton_loss_curvature(f, num_actions, stage, stage + horizon - 1,
                                            false, CurvatureKind::restricted_forward, budget);
}

namespace detail {

// max over strings N with 0 < |N| <= max_n_len of
//   1 - (f(N ⊕ M) - f(M)) / f(N)            (prepend = true)
//   1 - (f(M ⊕ N) - f(M)) / f(N)            (prepend = false)
inline CurvatureReport curvature_wrt(const ObjectiveOracle& f, const ActionString& m,
                                     int num_actions, int max_n_len, bool prepend,
                                     CurvatureKind kind, const EnumerationBudget& budget) {
    require_budget(count_strings(num_actions, 1, max_n_len) * 2 + 1, budget,
                   curvature_kind_name(kind));
    CurvatureReport report;
    report.kind = kind;
    report.search_len = max_n_len;
    report.fixed_m = m;
    double at_m = f(m);
    RunningMax best;
    for_each_string(num_actions, 1, max_n_len, [&](const ActionString& n) {
        double at_n = f(n);
        if (at_n == 0.0) {
            ++report.skipped_zero_denominators;
            return;
        }
        double joined = prepend ? f(concat(n, m)) : f(concat(m, n));
        ++report.candidates;
        if (best.offer(1.0 - (joined - at_m) / at_n)) report.witness_m = n;
    });
    if (!best.have)
        throw DegenerateOracleError(std::string(curvature_kind_name(kind)) +
                                    ": every candidate string has zero value");
    report.value = best.value;
    return report;
}

}  // namespace detail

// Total backward curvature with respect to a fixed string M:
// max over 0 < |N| <= K of 1 - (f(N ⊕ M) - f(M)) / f(N).
inline CurvatureReport total_backward_curvature_wrt(const ObjectiveOracle& f,
                                                    const ActionString& m, int num_actions,
                                                    int horizon,
                                                    const EnumerationBudget& budget = {}) {
    return detail::curvature_wrt(f, m, num_actions, horizon, true,
                                 CurvatureKind::total_backward_wrt, budget);
}

// Total forward curvature with respect to a fixed string M.
inline CurvatureReport total_forward_curvature_wrt(const ObjectiveOracle& f,
                                                   const ActionString& m, int num_actions,
                                                   int horizon,
                                                   const EnumerationBudget& budget = {}) {
    return detail::curvature_wrt(f, m, num_actions, horizon, false,
                                 CurvatureKind::total_forward_wrt, budget);
}

namespace detail {

inline CurvatureReport elemental_curvature(const ObjectiveOracle& f, int num_actions,
                                           int search_len, CurvatureKind kind,
                                           const EnumerationBudget& budget) {
    require_budget(count_strings(num_actions, 0, search_len) *
                       (static_cast<std::uint64_t>(num_actions) * num_actions + 1),
                   budget, curvature_kind_name(kind));
    CurvatureReport report;
    report.kind = kind;
    report.search_len = search_len;
    RunningMax best;
    for_each_string(num_actions, 0, search_len, [&](const ActionString& m) {
        double at_m = f(m);
        for (Action aj = 0; aj < num_actions; ++aj) {
            double denom = f(append(m, aj)) - at_m;
            if (denom == 0.0) {
                report.skipped_zero_denominators +=
                    static_cast<std::uint64_t>(num_actions);
                continue;
            }
            for (Action ai = 0; ai < num_actions; ++ai) {
                ActionString mi = append(m, ai);
                double numer = f(append(mi, aj)) - f(mi);
                ++report.candidates;
                if (best.offer(numer / denom)) {
                    report.witness_a = ai;
                    report.witness_b = aj;
                    report.witness_m = m;
                }
            }
        }
    });
    if (!best.have)
        throw DegenerateOracleError(std::string(curvature_kind_name(kind)) +
                                    ": every marginal gain is zero");
    report.value = best.value;
    return report;
}

}  // namespace detail

// Elemental forward curvature: worst ratio of an action's marginal gain
// with one extra intervening action to its gain without it. At most 1
// exactly when the oracle has diminishing returns over the scanned depth.
inline CurvatureReport elemental_forward_curvature(const ObjectiveOracle& f, int num_actions,
                                                   int search_len,
                                                   const EnumerationBudget& budget = {}) {
    return detail::elemental_curvature(f, num_actions, search_len,
                                       CurvatureKind::elemental, budget);
}

// Elemental curvature restricted to |M| <= 2K-2, the largest window any of
// the horizon-K bounds consumes.
inline CurvatureReport restricted_elemental_curvature(const ObjectiveOracle& f,
                                                      int num_actions, int horizon,
                                                      const EnumerationBudget& budget = {}) {
    return detail::elemental_curvature(f, num_actions, 2 * horizon - 2,
                                       CurvatureKind::restricted_elemental, budget);
}

// ─── Effective elemental curvature ────────────────────────────
// The value substituted for the elemental curvature in the horizon-aware
// approximation bounds: eta itself when eta <= 1, else eta^(2K-1).

struct EffectiveElemental {
    double eta = 0.0;
    int horizon = 0;
    double value = 0.0;
};

inline EffectiveElemental effective_elemental_curvature(double eta, int horizon) {
    EffectiveElemental out{eta, horizon, eta};
    if (eta > 1.0) out.value = std::pow(eta, 2 * horizon - 1);
    return out;
}

}  // namespace strsub
