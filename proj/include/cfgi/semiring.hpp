#pragma once

// Labels are pairs (group element, bracket word) and live in the quotient
// G x T: the word coordinate is stored group-canonicalized. Every comparison
// the decision sweep makes is modulo G, so the quotient preserves verdicts
// while keeping sets small. Label sets form a semiring under union and
// elementwise product, with zero {} and identity {1}.

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "cfgi/dyck.hpp"
#include "cfgi/errors.hpp"
#include "cfgi/group.hpp"

namespace cfgi {

constexpr size_t default_label_cap = 100000;

struct ulabel {
    group_elem g;
    tword t;
    auto operator<=>(const ulabel&) const = default;
};

inline ulabel u_one(const group_backend& b) { return {b.identity(), {}}; }

inline ulabel u_mul(const group_backend& b, const ulabel& u1, const ulabel& u2) {
    return {b.mul(u1.g, u2.g), t_mul(u1.t, u2.t)};
}

inline ulabel u_inv(const group_backend& b, const ulabel& u) {
    return {b.inv(u.g), t_inv(u.t)};
}

// Sorted, duplicate-free vector of labels.
class label_set {
  public:
    label_set() = default;
    explicit label_set(std::vector<ulabel> items) : v_(std::move(items)) {
        std::sort(v_.begin(), v_.end());
        v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
    }
    static label_set singleton(ulabel u) {
        label_set s;
        s.v_.push_back(std::move(u));
        return s;
    }

    bool empty() const { return v_.empty(); }
    size_t size() const { return v_.size(); }
    const std::vector<ulabel>& items() const { return v_; }
    bool contains(const ulabel& u) const {
        return std::binary_search(v_.begin(), v_.end(), u);
    }
    void insert(ulabel u) {
        auto it = std::lower_bound(v_.begin(), v_.end(), u);
        if (it == v_.end() || *it != u) v_.insert(it, std::move(u));
    }
    bool operator==(const label_set&) const = default;

  private:
    std::vector<ulabel> v_;
};

using label_matrix = std::vector<std::vector<label_set>>;

namespace detail {
[[noreturn]] inline void cap_exceeded(const char* op, size_t n1, size_t n2, size_t cap) {
    throw budget_error(std::string(op) + ": result exceeds label-set cap " + std::to_string(cap) +
                       " (operand sizes " + std::to_string(n1) + " x " + std::to_string(n2) + ")");
}
} // namespace detail

inline label_set set_union(const label_set& m1, const label_set& m2,
                           size_t cap = default_label_cap) {
    std::vector<ulabel> out;
    out.reserve(m1.size() + m2.size());
    std::set_union(m1.items().begin(), m1.items().end(), m2.items().begin(), m2.items().end(),
                   std::back_inserter(out));
    if (out.size() > cap) detail::cap_exceeded("set_union", m1.size(), m2.size(), cap);
    return label_set(std::move(out));
}

inline label_set set_mul(const group_backend& b, const label_set& m1, const label_set& m2,
                         size_t cap = default_label_cap) {
    std::vector<ulabel> out;
    out.reserve(m1.size() * m2.size());
    for (const auto& u : m1.items())
        for (const auto& v : m2.items()) out.push_back(u_mul(b, u, v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > cap) detail::cap_exceeded("set_mul", m1.size(), m2.size(), cap);
    return label_set(std::move(out));
}

// m1 star m2: conjugates of m1 elements by m2 elements.
inline label_set set_star(const group_backend& b, const label_set& m1, const label_set& m2,
                          size_t cap = default_label_cap) {
    std::vector<ulabel> out;
    out.reserve(m1.size() * m2.size());
    for (const auto& w : m2.items()) {
        ulabel wi = u_inv(b, w);
        for (const auto& v : m1.items()) out.push_back(u_mul(b, u_mul(b, wi, v), w));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > cap) detail::cap_exceeded("set_star", m1.size(), m2.size(), cap);
    return label_set(std::move(out));
}

inline label_set balanced_filter(const label_set& m) {
    std::vector<ulabel> out;
    for (const auto& u : m.items())
        if (is_balanced(u.t)) out.push_back(u);
    return label_set(std::move(out));
}

inline bool is_identity_singleton(const group_backend& b, const label_set& m) {
    return m.size() == 1 && m.items()[0] == u_one(b);
}

// Report rendering: "<group-word>|<bracket-word>", epsilon for empty parts.
inline std::string render_label(const group_backend& b, const ulabel& u,
                                const std::vector<std::string>& nt_names) {
    return b.render(u.g) + "|" + render_tword(u.t, nt_names);
}

// Deterministic output order: lexicographic on (rendered g, rendered t).
inline std::vector<std::string> render_set(const group_backend& b, const label_set& m,
                                           const std::vector<std::string>& nt_names) {
    std::vector<std::pair<std::string, std::string>> keyed;
    keyed.reserve(m.size());
    for (const auto& u : m.items())
        keyed.emplace_back(b.render(u.g), render_tword(u.t, nt_names));
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::string> out;
    out.reserve(keyed.size());
    for (auto& [gs, ts] : keyed) out.push_back(gs + "|" + ts);
    return out;
}

} // namespace cfgi
