#pragma once

#include <cstdint>
#include <limits>

#include "strsub/errors.hpp"
#include "strsub/strings.hpp"

namespace strsub {

// Number of strings over `num_actions` actions with length in
// [min_len, max_len], saturating at uint64 max.
inline std::uint64_t count_strings(int num_actions, int min_len, int max_len) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t pow = 1;
    for (int len = 0; len <= max_len; ++len) {
        if (len >= min_len) {
            if (total > kMax - pow) return kMax;
            total += pow;
        }
        if (len < max_len) {
            if (num_actions != 0 && pow > kMax / num_actions) return kMax;
            pow *= num_actions;
        }
    }
    return total;
}

// Visits every string with length in [min_len, max_len], ordered by length
// and lexicographically within a length. The visitor receives a const
// ActionString&; enumeration order is deterministic.
template <class Visitor>
void for_each_string(int num_actions, int min_len, int max_len, Visitor&& visit) {
    for (int len = min_len; len <= max_len; ++len) {
        std::vector<Action> digits(len, 0);
        while (true) {
            visit(static_cast<const ActionString&>(ActionString(digits)));
            int pos = len - 1;
            while (pos >= 0 && digits[pos] == num_actions - 1) {
                digits[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++digits[pos];
        }
    }
}

}  // namespace strsub
