#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>

#include "strsub/errors.hpp"
#include "strsub/strings.hpp"

namespace strsub {

// ─── ObjectiveOracle ──────────────────────────────────────────
// A deterministic map from action strings to reals. Evaluations are
// memoized keyed on the string: curvature and bound enumerations revisit
// prefixes heavily, so repeated evaluation collapses to table lookups.
// Copies carry their own memo table, which keeps concurrent use trivially
// safe (per-worker tables, identical values by purity).

class ObjectiveOracle {
public:
    ObjectiveOracle() = default;

    explicit ObjectiveOracle(std::function<double(const ActionString&)> fn)
        : fn_(std::move(fn)) {}

    double operator()(const ActionString& s) const {
        ++calls_;
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        double value = fn_(s);
        ++misses_;
        memo_.emplace(s, value);
        return value;
    }

    bool valid() const { return static_cast<bool>(fn_); }

    std::uint64_t call_count() const { return calls_; }
    std::uint64_t eval_count() const { return misses_; }
    void clear_cache() const { memo_.clear(); }

private:
    std::function<double(const ActionString&)> fn_;
    mutable std::unordered_map<ActionString, double, ActionStringHash> memo_;
    mutable std::uint64_t calls_ = 0;
    mutable std::uint64_t misses_ = 0;
};

// Returns the marginalized oracle g(M) = f(M) - f(∅), so that g(∅) = 0.
// Idempotent when f(∅) is already zero (the original oracle is returned).
inline ObjectiveOracle normalize(const ObjectiveOracle& f) {
    double at_empty = f(ActionString{});
    if (at_empty == 0.0) return f;
    return ObjectiveOracle(
        [f, at_empty](const ActionString& s) { return f(s) - at_empty; });
}

// ─── TableOracle ──────────────────────────────────────────────
// Finite-support oracle: explicit values per string, optional default for
// strings outside the table. Without a default, a miss is an error (used
// by generated instances to catch probes past their defined depth).

class TableOracle {
public:
    TableOracle(int num_actions,
                std::unordered_map<ActionString, double, ActionStringHash> values,
                std::optional<double> default_value)
        : num_actions_(num_actions),
          values_(std::make_shared<
                  std::unordered_map<ActionString, double, ActionStringHash>>(
              std::move(values))),
          default_(default_value) {}

    double operator()(const ActionString& s) const {
        auto it = values_->find(s);
        if (it != values_->end()) return it->second;
        if (default_) return *default_;
        throw DepthExceededError("table oracle has no value for (" + s.key() +
                                 ") and no default");
    }

    int num_actions() const { return num_actions_; }

    ObjectiveOracle as_objective() const {
        TableOracle copy = *this;
        return ObjectiveOracle(
            [copy](const ActionString& s) { return copy(s); });
    }

private:
    int num_actions_ = 0;
    std::shared_ptr<const std::unordered_map<ActionString, double, ActionStringHash>>
        values_;
    std::optional<double> default_;
};

}  // namespace strsub
