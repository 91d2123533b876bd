#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace strsub {

// An action is an index into the action set {0, 1, ..., num_actions-1}.
using Action = int;

// ─── ActionString ─────────────────────────────────────────────
// An ordered, possibly empty, possibly repeating sequence of actions.
// This is the domain element of every objective in the library.

class ActionString {
public:
    ActionString() = default;
    ActionString(std::initializer_list<Action> actions) : elems_(actions) {}
    explicit ActionString(std::vector<Action> actions) : elems_(std::move(actions)) {}

    std::size_t length() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }

    Action operator[](std::size_t i) const { return elems_[i]; }
    Action front() const { return elems_.front(); }
    Action back() const { return elems_.back(); }

    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    void append(Action a) { elems_.push_back(a); }
    void prepend(Action a) { elems_.insert(elems_.begin(), a); }

    ActionString prefix(std::size_t len) const {
        return ActionString(std::vector<Action>(elems_.begin(), elems_.begin() + len));
    }

    // Copy with the element at position `pos` removed.
    ActionString without(std::size_t pos) const {
        std::vector<Action> out;
        out.reserve(elems_.size() - 1);
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (i != pos) out.push_back(elems_[i]);
        return ActionString(std::move(out));
    }

    const std::vector<Action>& elements() const { return elems_; }

    friend bool operator==(const ActionString&, const ActionString&) = default;

    // Comma-joined action ids; the empty string denotes the empty sequence.
    std::string key() const {
        std::string out;
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) out.push_back(',');
            out += std::to_string(elems_[i]);
        }
        return out;
    }

    static ActionString from_key(std::string_view key);

private:
    std::vector<Action> elems_;
};

struct ActionStringHash {
    std::size_t operator()(const ActionString& s) const {
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (Action a : s) {
            h ^= static_cast<std::uint64_t>(a) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline ActionString ActionString::from_key(std::string_view key) {
    std::vector<Action> out;
    std::size_t pos = 0;
    while (pos < key.size()) {
        std::size_t comma = key.find(',', pos);
        if (comma == std::string_view::npos) comma = key.size();
        out.push_back(std::stoi(std::string(key.substr(pos, comma - pos))));
        pos = comma + 1;
    }
    return ActionString(std::move(out));
}

inline ActionString concat(const ActionString& m, const ActionString& n) {
    std::vector<Action> out;
    out.reserve(m.length() + n.length());
    out.insert(out.end(), m.begin(), m.end());
    out.insert(out.end(), n.begin(), n.end());
    return ActionString(std::move(out));
}

inline ActionString append(const ActionString& m, Action a) {
    ActionString out = m;
    out.append(a);
    return out;
}

inline ActionString prepend(Action a, const ActionString& m) {
    std::vector<Action> out;
    out.reserve(m.length() + 1);
    out.push_back(a);
    out.insert(out.end(), m.begin(), m.end());
    return ActionString(std::move(out));
}

// True iff there is an L with n = m ⊕ L.
inline bool is_prefix(const ActionString& m, const ActionString& n) {
    if (m.length() > n.length()) return false;
    for (std::size_t i = 0; i < m.length(); ++i)
        if (m[i] != n[i]) return false;
    return true;
}

// True iff m is obtained from n by deleting zero or more elements,
// preserving the order of the rest.
inline bool is_subsequence(const ActionString& m, const ActionString& n) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < n.length() && i < m.length(); ++j)
        if (m[i] == n[j]) ++i;
    return i == m.length();
}

inline std::ostream& operator<<(std::ostream& os, const ActionString& s) {
    return os << '(' << s.key() << ')';
}

}  // namespace strsub
