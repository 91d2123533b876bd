#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "strsub/errors.hpp"
#include "strsub/infogain.hpp"
#include "strsub/matroid.hpp"
#include "strsub/oracle.hpp"
#include "strsub/strings.hpp"
#include "strsub/tasks.hpp"

namespace strsub::gen {

// Hand-rolled uniform draws: identical streams on every platform, so seeded
// instances (and therefore CSV outputs) are reproducible byte for byte.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// ─── String-submodular table oracles ──────────────────────────

// Prefix-decay construction: each string's stagewise gains are its parent's
// gains scaled by per-action factors below one, so marginal gains are
// nonincreasing along every prefix chain and the table is string submodular
// by construction (no rejection needed). Values cover all strings up to
// depth 2K; the table is strict so any deeper probe is an error.
inline TableOracle random_decay_table(int num_actions, int horizon, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    const int depth = 2 * horizon;
    std::unordered_map<ActionString, double, ActionStringHash> values;
    values.reserve(static_cast<std::size_t>(count_strings(num_actions, 0, depth)));

    struct Frame {
        ActionString prefix;
        double value;
        std::vector<double> gains;
    };
    std::vector<double> root_gains(num_actions);
    for (double& g : root_gains) g = uniform(rng, 0.3, 1.0);
    std::vector<Frame> stack{{ActionString{}, 0.0, std::move(root_gains)}};
    values.emplace(ActionString{}, 0.0);
    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        for (Action a = 0; a < num_actions; ++a) {
            ActionString child = append(frame.prefix, a);
            double value = frame.value + frame.gains[a];
            values.emplace(child, value);
            if (static_cast<int>(child.length()) < depth) {
                std::vector<double> gains(num_actions);
                for (Action x = 0; x < num_actions; ++x)
                    gains[x] = frame.gains[x] * uniform(rng, 0.6, 0.95);
                stack.push_back({std::move(child), value, std::move(gains)});
            }
        }
    }
    return TableOracle(num_actions, std::move(values), std::nullopt);
}

// Weighted-coverage construction: each action covers a random subset of a
// small universe and a string's value is the total weight covered by its
// support. Order-symmetric, monotone, backward monotone, and string
// submodular; complements the decay tables with instances where the
// backward-monotonicity corollaries apply.
inline TableOracle random_coverage_table(int num_actions, int horizon, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x853c49e6748fea9bull);
    const int universe = 6;
    std::vector<double> weights(universe);
    for (double& w : weights) w = uniform(rng, 0.2, 1.0);
    std::vector<std::uint32_t> covers(num_actions, 0);
    for (Action a = 0; a < num_actions; ++a) {
        for (int u = 0; u < universe; ++u)
            if (uniform_unit(rng) < 0.5) covers[a] |= 1u << u;
        if (covers[a] == 0) covers[a] = 1u << uniform_int(rng, 0, universe - 1);
    }
    const int depth = 2 * horizon;
    std::unordered_map<ActionString, double, ActionStringHash> values;
    for_each_string(num_actions, 0, depth, [&](const ActionString& s) {
        std::uint32_t mask = 0;
        for (Action a : s) mask |= covers[a];
        double total = 0.0;
        for (int u = 0; u < universe; ++u)
            if (mask & (1u << u)) total += weights[u];
        values.emplace(s, total);
    });
    return TableOracle(num_actions, std::move(values), std::nullopt);
}

// Alternates between the two constructions by seed parity.
inline TableOracle random_submodular_table(int num_actions, int horizon,
                                           std::uint64_t seed) {
    return (seed % 2 == 0) ? random_decay_table(num_actions, horizon, seed)
                           : random_coverage_table(num_actions, horizon, seed);
}

// ─── Matroids ─────────────────────────────────────────────────

inline StringMatroid random_max_repeats_matroid(int num_actions, int rank,
                                                std::mt19937_64& rng,
                                                std::vector<int>* caps_out = nullptr) {
    std::vector<int> caps(num_actions);
    int total = 0;
    for (int& c : caps) {
        c = uniform_int(rng, 1, rank);
        total += c;
    }
    while (total < rank) {  // keep a maximal string reachable
        int a = uniform_int(rng, 0, num_actions - 1);
        ++caps[a];
        ++total;
    }
    if (caps_out) *caps_out = caps;
    return max_repeats_matroid(std::move(caps), rank);
}

// Position-banned family expressed as an explicit forbidden-prefix list:
// action sets shrink with the stage (once banned, an action stays banned),
// which keeps the hereditary and augmentation axioms intact. The list
// contains every length-j string ending in an action banned at stage j.
inline std::vector<ActionString> random_position_forbidden_list(int num_actions, int rank,
                                                                std::mt19937_64& rng) {
    std::vector<bool> banned(num_actions, false);
    int banned_count = 0;
    std::vector<std::vector<int>> banned_at(rank + 1);
    for (int stage = 2; stage <= rank; ++stage) {
        if (banned_count < num_actions - 1 && uniform_unit(rng) < 0.5) {
            int pick = uniform_int(rng, 0, num_actions - 1 - banned_count);
            for (Action a = 0; a < num_actions; ++a) {
                if (banned[a]) continue;
                if (pick-- == 0) {
                    banned[a] = true;
                    ++banned_count;
                    break;
                }
            }
        }
        for (Action a = 0; a < num_actions; ++a)
            if (banned[a]) banned_at[stage].push_back(a);
    }
    std::vector<ActionString> forbidden;
    for (int stage = 2; stage <= rank; ++stage) {
        for (Action d : banned_at[stage]) {
            for_each_string(num_actions, stage - 1, stage - 1,
                            [&](const ActionString& w) { forbidden.push_back(append(w, d)); });
        }
    }
    return forbidden;
}

inline StringMatroid random_prefix_forbidden_matroid(int num_actions, int rank,
                                                     std::mt19937_64& rng) {
    return prefix_forbidden_matroid(random_position_forbidden_list(num_actions, rank, rng),
                                    rank);
}

// Uniform random maximal independent string via a feasible extension walk;
// the augmentation axiom guarantees the walk always reaches the rank.
inline ActionString random_independent_string(const StringMatroid& m, int num_actions,
                                              std::mt19937_64& rng) {
    ActionString cur;
    for (int stage = 0; stage < m.rank; ++stage) {
        std::vector<Action> feasible;
        for (Action a = 0; a < num_actions; ++a)
            if (m.is_independent(append(cur, a))) feasible.push_back(a);
        if (feasible.empty())
            throw Error("random_independent_string: no feasible extension (invalid matroid)");
        cur.append(feasible[uniform_int(rng, 0, static_cast<int>(feasible.size()) - 1)]);
    }
    return cur;
}

// ─── Application models ───────────────────────────────────────

// Task instance inside the golden-ratio window (string submodular and
// full-extension hypothesis guaranteed).
inline tasks::TaskModel random_golden_task(int num_actions, int horizon,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0xda3e39cb94b95bdbull);
    int n = uniform_int(rng, 1, 3);
    std::vector<double> lower(num_actions), upper(num_actions);
    for (Action a = 0; a < num_actions; ++a) {
        lower[a] = uniform(rng, 0.383, 0.45);
        upper[a] = uniform(rng, 0.52, 0.617);
    }
    const int depth = 3 * horizon - 1;
    std::vector<std::vector<std::vector<double>>> probs(n);
    for (int i = 0; i < n; ++i) {
        probs[i].resize(depth);
        for (int j = 0; j < depth; ++j) {
            probs[i][j].resize(num_actions);
            for (Action a = 0; a < num_actions; ++a)
                probs[i][j][a] = uniform(rng, lower[a], upper[a]);
        }
    }
    return tasks::make_task_model(n, horizon, std::move(probs), std::move(lower),
                                  std::move(upper));
}

// Task instance whose stage probabilities never increase with the stage.
inline tasks::TaskModel random_nonincreasing_task(int num_actions, int horizon,
                                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x705eef6c69e9dbd9ull);
    int n = uniform_int(rng, 1, 2);
    std::vector<double> lower(num_actions), upper(num_actions);
    for (Action a = 0; a < num_actions; ++a) {
        lower[a] = uniform(rng, 0.2, 0.3);
        upper[a] = uniform(rng, 0.5, 0.7);
    }
    const int depth = 3 * horizon - 1;
    std::vector<std::vector<std::vector<double>>> probs(n);
    for (int i = 0; i < n; ++i) {
        probs[i].assign(depth, std::vector<double>(num_actions));
        for (Action a = 0; a < num_actions; ++a) {
            std::vector<double> draws(depth);
            for (double& p : draws) p = uniform(rng, lower[a], upper[a]);
            std::sort(draws.begin(), draws.end(), std::greater<>());
            for (int j = 0; j < depth; ++j) probs[i][j][a] = draws[j];
        }
    }
    return tasks::make_task_model(n, horizon, std::move(probs), std::move(lower),
                                  std::move(upper));
}

// Information-gain instance over the default five-point power grid with
// deviations in [0.5, 2]. `decreasing_step` plants exactly one strictly
// decreasing adjacent variance pair inside the curvature window; otherwise
// the variance sequence is sorted non-decreasing.
inline infogain::InfoGainModel random_infogain(int horizon, std::uint64_t seed,
                                               bool decreasing_step,
                                               double dev_lo = 0.5, double dev_hi = 2.0) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0x94d049bb133111ebull);
    double t0 = uniform(rng, 0.5, 1.5);
    double s0 = t0 + uniform(rng, 0.0, 1.0);
    const int declared = 2 * horizon;
    std::vector<double> vars(declared);
    for (double& v : vars) v = uniform(rng, dev_lo * dev_lo, dev_hi * dev_hi);
    std::sort(vars.begin(), vars.end());
    if (decreasing_step) {
        int i = uniform_int(rng, 0, declared - 2);
        while (vars[i] == vars[i + 1]) vars[i + 1] = uniform(rng, dev_lo * dev_lo, dev_hi * dev_hi);
        if (vars[i] < vars[i + 1]) std::swap(vars[i], vars[i + 1]);
    }
    return infogain::make_infogain_model(s0, t0, std::move(vars), dev_lo, dev_hi,
                                         infogain::default_power_grid(), horizon);
}

}  // namespace strsub::gen
