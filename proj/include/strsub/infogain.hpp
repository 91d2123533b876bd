#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "strsub/curvature.hpp"
#include "strsub/errors.hpp"
#include "strsub/oracle.hpp"
#include "strsub/properties.hpp"
#include "strsub/strings.hpp"

namespace strsub::infogain {

// ─── Gaussian information-gain model ──────────────────────────
// A two-dimensional signal with diagonal prior Diag(s0, t0), s0 >= t0,
// measured through power-constrained diagonal matrices Diag(√e, √(1-e))
// under stage-dependent white noise of variance noise_vars[i]. The
// objective is the entropy reduction after k measurements,
//   f = ½ (log det P0 - log det P_k),
// computed through the scalar information recursions
//   s_k⁻¹ = s0⁻¹ + Σ σ_i⁻² e_i,   t_k⁻¹ = t0⁻¹ + Σ σ_i⁻² (1-e_i).
// Natural logs throughout; the entropy constant cancels in the difference.
// Noise variances past the declared sequence repeat the final value, up to
// probe depth 3K-1.

struct InfoGainModel {
    double s0 = 1.0;
    double t0 = 1.0;
    std::vector<double> noise_vars;  // σ_i², extended to probe_depth()
    double dev_lo = 0.0;             // a: lower bound on the deviations σ_i
    double dev_hi = 0.0;             // b: upper bound on the deviations σ_i
    std::vector<double> grid;        // power splits e; one action per entry
    int horizon = 1;                 // K

    int num_actions() const { return static_cast<int>(grid.size()); }
    int probe_depth() const { return static_cast<int>(noise_vars.size()); }
    double inv_var(int stage) const { return 1.0 / noise_vars[stage]; }  // 0-based
};

inline const std::vector<double>& default_power_grid() {
    static const std::vector<double> grid{0.0, 0.25, 0.5, 0.75, 1.0};
    return grid;
}

inline InfoGainModel make_infogain_model(double s0, double t0,
                                         std::vector<double> noise_vars, double dev_lo,
                                         double dev_hi, std::vector<double> grid,
                                         int horizon) {
    if (!(t0 > 0.0) || s0 < t0)
        throw InputError("infogain model: needs s0 >= t0 > 0");
    if (horizon < 1) throw InputError("infogain model: K must be >= 1");
    if (!(0.0 < dev_lo && dev_lo <= dev_hi))
        throw InputError("infogain model: needs 0 < a <= b");
    if (noise_vars.empty()) throw InputError("infogain model: needs noise variances");
    for (double v : noise_vars)
        if (v < dev_lo * dev_lo - 1e-12 || v > dev_hi * dev_hi + 1e-12)
            throw InputError("infogain model: noise variance outside [a^2, b^2]");
    if (grid.empty()) grid = default_power_grid();
    for (double e : grid)
        if (e < 0.0 || e > 1.0)
            throw InputError("infogain model: power splits must lie in [0, 1]");

    const int depth = std::max(3 * horizon - 1, 2 * horizon);
    while (static_cast<int>(noise_vars.size()) < depth)
        noise_vars.push_back(noise_vars.back());

    InfoGainModel m;
    m.s0 = s0;
    m.t0 = t0;
    m.noise_vars = std::move(noise_vars);
    m.dev_lo = dev_lo;
    m.dev_hi = dev_hi;
    m.grid = std::move(grid);
    m.horizon = horizon;
    return m;
}

struct PosteriorState {
    double s = 0.0;
    double t = 0.0;
};

inline PosteriorState posterior_after(const InfoGainModel& m, const ActionString& s) {
    if (static_cast<int>(s.length()) > m.probe_depth())
        throw DepthExceededError("infogain: string longer than probe depth " +
                                 std::to_string(m.probe_depth()));
    double info_s = 1.0 / m.s0;
    double info_t = 1.0 / m.t0;
    for (std::size_t i = 0; i < s.length(); ++i) {
        double e = m.grid[s[i]];
        double beta = m.inv_var(static_cast<int>(i));
        info_s += beta * e;
        info_t += beta * (1.0 - e);
    }
    return {1.0 / info_s, 1.0 / info_t};
}

inline ObjectiveOracle infogain_objective(const InfoGainModel& m) {
    return ObjectiveOracle([m](const ActionString& s) {
        if (static_cast<int>(s.length()) > m.probe_depth())
            throw DepthExceededError("infogain: string longer than probe depth " +
                                     std::to_string(m.probe_depth()));
        double gain_s = 0.0;  // s0 · Σ σ_i⁻² e_i
        double gain_t = 0.0;
        for (std::size_t i = 0; i < s.length(); ++i) {
            double e = m.grid[s[i]];
            double beta = m.inv_var(static_cast<int>(i));
            gain_s += beta * e;
            gain_t += beta * (1.0 - e);
        }
        return 0.5 * (std::log1p(m.s0 * gain_s) + std::log1p(m.t0 * gain_t));
    });
}

namespace detail {

inline int grid_index(const InfoGainModel& m, double e) {
    for (int i = 0; i < m.num_actions(); ++i)
        if (std::abs(m.grid[i] - e) < 1e-12) return i;
    return -1;
}

}  // namespace detail

// ─── Submodularity and the restricted elemental curvature ─────

// Diagnoses string submodularity against the noise sequence. The model has
// diminishing returns exactly when the variances are non-decreasing over
// the probed window; a decreasing step yields an explicit violating triple
// built from the full-power and zero-power actions.
struct SubmodularityWitnessReport {
    bool non_decreasing = false;
    double eta_hat = 0.0;  // enumerated over |M| <= 2K-2

    // Filled when the variances are non-decreasing:
    bool diminishing_return_ok = false;

    // Filled when a decreasing step σ_k² > σ_{k+1}² exists (1-based k):
    int step_index = -1;
    ActionString witness_prefix;       // M0, k-1 full-power measurements
    ActionString witness_longer;       // M0 ⊕ (full-power action)
    Action witness_action = -1;        // the zero-power action
    double gain_after = 0.0;           // marginal of the action after witness_longer
    double gain_before = 0.0;          // marginal of the action after witness_prefix
    bool violation_confirmed = false;  // gain_after > gain_before
};

inline SubmodularityWitnessReport submodularity_witness(const InfoGainModel& m,
                                                        double tol = kDefaultTol,
                                                        const EnumerationBudget& budget = {}) {
    const int full = detail::grid_index(m, 1.0);
    const int zero = detail::grid_index(m, 0.0);
    if (full < 0 || zero < 0)
        throw InputError("submodularity witness needs e=0 and e=1 in the action grid");

    SubmodularityWitnessReport report;
    ObjectiveOracle f = infogain_objective(m);
    report.eta_hat =
        restricted_elemental_curvature(f, m.num_actions(), m.horizon, budget).value;

    int step = -1;
    for (int k = 1; k < 2 * m.horizon && step < 0; ++k)
        if (m.noise_vars[k - 1] > m.noise_vars[k]) step = k;

    if (step < 0) {
        report.non_decreasing = true;
        report.diminishing_return_ok =
            check_diminishing_return(f, m.num_actions(), 2 * m.horizon, tol, budget).ok();
        return report;
    }

    report.step_index = step;
    std::vector<Action> prefix(step - 1, full);
    report.witness_prefix = ActionString(prefix);
    report.witness_longer = append(report.witness_prefix, full);
    report.witness_action = zero;
    report.gain_after = f(append(report.witness_longer, zero)) - f(report.witness_longer);
    report.gain_before = f(append(report.witness_prefix, zero)) - f(report.witness_prefix);
    report.violation_confirmed = report.gain_after > report.gain_before + tol;
    return report;
}

// ─── Closed-form bounds on the restricted elemental curvature ──

// Instance-specific lower bound: the ratio realized by the full-power /
// zero-power pair at the stage where consecutive inverse variances jump
// the most, with the posterior t-channel pushed to whichever extreme the
// jump direction favors. The witness needs e=0 and e=1 in the action set,
// as in the default grid.
inline double eta_hat_lower_bound(const InfoGainModel& m) {
    int best_m = 0;
    double best_ratio = -1.0;
    for (int len = 0; len <= 2 * m.horizon - 2; ++len) {
        double ratio = m.inv_var(len + 1) / m.inv_var(len);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_m = len;
        }
    }
    double t;
    if (best_ratio <= 1.0) {
        t = m.t0;  // ratio is monotone increasing in t; e=1 actions keep t at t0
    } else {
        double info_t = 1.0 / m.t0;  // e=0 actions drain t as fast as possible
        for (int i = 0; i < best_m; ++i) info_t += m.inv_var(i);
        t = 1.0 / info_t;
    }
    return std::log1p(t * m.inv_var(best_m + 1)) / std::log1p(t * m.inv_var(best_m));
}

// Realization-independent lower bound for deviations in [a, b].
inline double eta_hat_lower_bound_interval(const InfoGainModel& m) {
    return std::log1p(m.t0 / (m.dev_hi * m.dev_hi)) /
           std::log1p(m.t0 / (m.dev_lo * m.dev_lo));
}

struct EtaHatUpperBound {
    double instance_bound = 0.0;  // from the instance's variance sequence
    double interval_bound = 0.0;  // for any realization with deviations in [a, b]
};

// Upper bounds on the restricted elemental curvature. Not tight for large
// horizons unless the prior or the inverse variances are small.
inline EtaHatUpperBound eta_hat_upper_bound(const InfoGainModel& m) {
    const int window = 2 * m.horizon;
    double sum_all = 0.0, sum_den = 0.0, max_beta = 0.0, min_beta = 0.0;
    for (int i = 0; i < window; ++i) {
        double beta = m.inv_var(i);
        sum_all += beta;
        if (i < window - 2) sum_den += beta;
        max_beta = std::max(max_beta, beta);
        min_beta = (i == 0) ? beta : std::min(min_beta, beta);
    }
    const double inv_s0 = 1.0 / m.s0, inv_t0 = 1.0 / m.t0;

    EtaHatUpperBound out;
    {
        double num = std::log(0.25 * (1.0 + m.s0 * inv_t0 + m.s0 * sum_all) *
                              (1.0 + (inv_s0 + max_beta) / (inv_t0 + m.inv_var(0))));
        double den = std::log1p(min_beta / (inv_t0 + sum_den));
        out.instance_bound = num / den;
    }
    {
        double beta_hi = 1.0 / (m.dev_lo * m.dev_lo);  // a⁻²
        double beta_lo = 1.0 / (m.dev_hi * m.dev_hi);  // b⁻²
        double num = std::log(0.25 * (1.0 + m.s0 * inv_t0 + 2.0 * m.s0 * m.horizon * beta_hi) *
                              (1.0 + (inv_s0 + beta_hi) / (inv_t0 + beta_lo)));
        double den =
            std::log1p(m.t0 * beta_lo / (1.0 + m.t0 * (2.0 * m.horizon - 2.0) * beta_hi));
        out.interval_bound = num / den;
    }
    return out;
}

// ─── First-stage analysis ─────────────────────────────────────

// Optimal first-stage power split over the continuous action set,
//   e* = ½ (1 + (t0⁻¹ - s0⁻¹) σ1²),
// clamped to [0, 1]. With s0 >= t0 this is always >= ½: the noisier prior
// channel receives at least half the power.
inline double greedy_first_split(const InfoGainModel& m) {
    double e = 0.5 * (1.0 + (1.0 / m.t0 - 1.0 / m.s0) / m.inv_var(0));
    return std::clamp(e, 0.0, 1.0);
}

// Sufficient condition for the extension hypothesis of the geometric bound:
//   b⁻² / (a⁻² - b⁻²) >= (K²/4) t0 (a⁻² + b⁻²) + 1.
// Requires either a narrow variance interval or a small horizon.
inline bool t2_condition_sufficient(const InfoGainModel& m) {
    double beta_hi = 1.0 / (m.dev_lo * m.dev_lo);  // a⁻²
    double beta_lo = 1.0 / (m.dev_hi * m.dev_hi);  // b⁻²
    if (beta_hi <= beta_lo) return true;           // vanishing interval
    double lhs = beta_lo / (beta_hi - beta_lo);
    double rhs = 0.25 * m.horizon * m.horizon * m.t0 * (beta_hi + beta_lo) + 1.0;
    return lhs >= rhs;
}

}  // namespace strsub::infogain
