#pragma once

// Bracket monoid over paired letters with the one-sided relation
// "opener immediately followed by its own closer cancels". The reversed
// factor (closer then opener) is NOT a redex and must survive.

#include <cstdint>
#include <string>
#include <vector>

namespace cfgi {

// Letter encoding: +k is the opener for bracket pair k, -k its closer, k >= 1.
// Pair k corresponds to the nonterminal with 0-based grammar index k-1.
using tword = std::vector<std::int32_t>;

// Single left-to-right stack pass; linear time. Correct because the rewriting
// system has no overlapping redexes: each step only ever removes a factor
// (+k, -k), so later letters can only create new redexes at the seam.
inline tword t_canon(const tword& raw) {
    tword out;
    out.reserve(raw.size());
    for (std::int32_t c : raw) {
        if (!out.empty() && c < 0 && out.back() == -c)
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

inline tword t_mul(const tword& u, const tword& v) {
    tword out = u;
    for (std::int32_t c : v) {
        if (!out.empty() && c < 0 && out.back() == -c)
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

// Reversal with every letter toggled. Canonical in, canonical out: a redex
// (+k, -k) in the output would mirror a redex in the input.
inline tword t_inv(const tword& w) {
    tword out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

// A canonical word equals the monoid identity iff it is empty.
inline bool is_balanced(const tword& w) { return w.empty(); }

// Debug rendering: openers as the name, closers as name + "'".
inline std::string render_tword(const tword& w, const std::vector<std::string>& names) {
    if (w.empty()) return "\xce\xb5"; // epsilon
    std::string out;
    for (std::int32_t c : w) {
        size_t idx = static_cast<size_t>((c > 0 ? c : -c) - 1);
        std::string nm = idx < names.size() ? names[idx] : "?" + std::to_string(idx + 1);
        out += nm;
        if (c < 0) out += "'";
    }
    return out;
}

} // namespace cfgi
