#pragma once

// Decision outcome shared by the closure sweep and the oracles, plus the
// bounded counterexample search both sides use.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfgi/grammar.hpp"
#include "cfgi/group.hpp"
#include "cfgi/semiring.hpp"

namespace cfgi {

enum class method { faithful, filtered, witness, anisimov, enumeration };

inline const char* method_name(method m) {
    switch (m) {
    case method::faithful: return "faithful";
    case method::filtered: return "filtered";
    case method::witness: return "witness";
    case method::anisimov: return "anisimov";
    case method::enumeration: return "enumeration";
    }
    return "?";
}

inline std::optional<method> method_from_name(const std::string& s) {
    for (method m : {method::faithful, method::filtered, method::witness, method::anisimov,
                     method::enumeration})
        if (s == method_name(m)) return m;
    return std::nullopt;
}

struct verdict {
    bool included = false;
    method meth = method::witness;
    std::optional<word> counterexample; // only when included is false
    std::string detail;                 // human-readable failure reason
    std::optional<label_set> failing_set;
    int failing_j = -1;                 // 0-based vertex of the failing sweep step
    std::uint64_t union_count = 0, product_count = 0, star_count = 0;
    size_t max_set_size = 0;
};

namespace detail {

// values[A][l]: group value -> lexicographically least word of exact length l
// derivable from A with that value. Exact because any derivation splits into
// independent subtrees, so combining per-value minimal representatives again
// yields per-value minimal representatives.
struct value_table {
    std::vector<std::vector<std::map<group_elem, word>>> v;
    size_t entries = 0;
};

inline value_table build_value_table(const grammar& g, const group_backend& b,
                                     const bound_morphism& m, int max_len, size_t budget) {
    value_table t;
    size_t n = g.nonterminals.size();
    size_t lmax = static_cast<size_t>(max_len);
    t.v.assign(n, std::vector<std::map<group_elem, word>>(lmax + 1));
    auto put = [&](size_t a, size_t l, const group_elem& val, const word& rep) {
        auto [it, fresh] = t.v[a][l].try_emplace(val, rep);
        if (fresh) {
            if (++t.entries > budget) throw budget_error("value table budget exceeded");
        } else if (rep < it->second) {
            it->second = rep;
        }
    };
    for (const auto& p : g.productions) {
        if (p.is_term() && lmax >= 1)
            put(static_cast<size_t>(p.lhs), 1,
                b.canon(apply_morphism(m, {p.rhs[0].id})), {p.rhs[0].id});
        else if (p.is_eps())
            put(static_cast<size_t>(p.lhs), 0, b.identity(), {});
    }
    for (size_t l = 2; l <= lmax; ++l) {
        for (const auto& p : g.productions) {
            if (!p.is_pair()) continue;
            size_t bb = static_cast<size_t>(p.rhs[0].id), cc = static_cast<size_t>(p.rhs[1].id);
            for (size_t l1 = 1; l1 < l; ++l1) {
                for (const auto& [gv1, w1] : t.v[bb][l1]) {
                    for (const auto& [gv2, w2] : t.v[cc][l - l1]) {
                        word rep = w1;
                        rep.insert(rep.end(), w2.begin(), w2.end());
                        put(static_cast<size_t>(p.lhs), l, b.mul(gv1, gv2), rep);
                    }
                }
            }
        }
    }
    return t;
}

} // namespace detail

// Length-lexicographically first word of the language (from the start symbol)
// whose group image is not the identity, searched up to max_len. Absence is
// not a proof of inclusion.
inline std::optional<word> find_counterexample(const grammar& g, const group_backend& b,
                                               const bound_morphism& m, int max_len,
                                               size_t budget = 500000) {
    if (g.empty_language) return std::nullopt;
    if (!is_cnf(g)) {
        // general right-hand sides: fall back to explicit enumeration
        for (const word& w : enumerate_words(g, 0, max_len, budget))
            if (!b.is_identity(b.canon(apply_morphism(m, w)))) return w;
        return std::nullopt;
    }
    auto t = detail::build_value_table(g, b, m, max_len, budget);
    for (size_t l = 0; l <= static_cast<size_t>(max_len); ++l) {
        std::optional<word> best;
        for (const auto& [val, rep] : t.v[0][l]) {
            if (b.is_identity(val)) continue;
            if (!best || rep < *best) best = rep;
        }
        if (best) return best;
    }
    return std::nullopt;
}

} // namespace cfgi
