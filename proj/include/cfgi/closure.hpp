#pragma once

// Floyd-Warshall-style closure over label sets and the two-phase inclusion
// check that runs on top of it, plus a literal walk-family enumerator used as
// a test oracle.
//
// The closure computes, for every vertex pair (i, j) and level k, the label
// set of the walk family "from i to j with interior vertices below k, or one
// pivot visit at k composed from two such walks". Level k always reads the
// level-(k-1) snapshot; in-place updates would change which families the
// entries denote.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfgi/diagram.hpp"
#include "cfgi/semiring.hpp"
#include "cfgi/verdict.hpp"

namespace cfgi {

enum class closure_mode { faithful, filtered };

struct closure_result {
    label_matrix m;                   // final level
    std::vector<label_matrix> levels; // levels[0] = input, levels[k] = after pivot k
    std::uint64_t union_count = 0;
    std::uint64_t product_count = 0;
    std::uint64_t star_count = 0;
    size_t max_set_size = 0;
    bool halted_early = false;
};

inline closure_result kleene_closure(const label_matrix& m0, const group_backend& b,
                                     size_t cap = default_label_cap) {
    closure_result res;
    size_t n1 = m0.size();
    res.levels.push_back(m0);
    for (const auto& row : m0)
        for (const auto& entry : row) res.max_set_size = std::max(res.max_set_size, entry.size());

    label_matrix g = m0;
    for (size_t k = 0; k < n1; ++k) {
        label_matrix ng(n1, std::vector<label_set>(n1));
        for (size_t i = 0; i < n1; ++i) {
            for (size_t j = 0; j < n1; ++j) {
                try {
                    label_set prod = set_mul(b, g[i][k], g[k][j], cap);
                    ng[i][j] = set_union(g[i][j], prod, cap);
                } catch (const budget_error& e) {
                    throw budget_error(std::string(e.what()) + " at entry (" +
                                       std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                       ", level " + std::to_string(k + 1) + ")");
                }
                ++res.product_count;
                ++res.union_count;
                res.max_set_size = std::max(res.max_set_size, ng[i][j].size());
            }
        }
        g = std::move(ng);
        res.levels.push_back(g);
    }
    res.m = std::move(g);
    return res;
}

namespace detail {
inline bool within_identity(const group_backend& b, const label_set& m) {
    // subset of {1}: empty passes
    return m.empty() || is_identity_singleton(b, m);
}
} // namespace detail

// Two-phase check over the closed matrix. Faithful mode tests the raw sets:
// FALSE when the start-to-sink set is nonempty and differs from {1}, then for
// each j with nonempty start->j, j->j and j->sink sets, FALSE when
// (j->j) star (j->sink) differs from {1}. Filtered mode runs the same sweep
// but compares only balance-filtered sets, with "subset of {1}" as the test
// (the nonemptiness guards stay raw). First failure wins; the sweep ascends.
inline verdict decide(const grammar& g, const group_backend& b, const bound_morphism& m,
                      closure_mode mode, size_t cap = default_label_cap, int cx_max_len = 8,
                      size_t cx_budget = 500000) {
    verdict v;
    v.meth = mode == closure_mode::faithful ? method::faithful : method::filtered;
    if (g.empty_language) {
        v.included = true;
        v.detail = "language is empty; inclusion holds vacuously";
        return v;
    }
    diagram d = build_diagram(g, m, b);
    closure_result cr = kleene_closure(initial_matrix(d), b, cap);
    v.union_count = cr.union_count;
    v.product_count = cr.product_count;
    v.max_set_size = cr.max_set_size;

    size_t z = static_cast<size_t>(d.sink());
    auto fail = [&](const std::string& why, const label_set& culprit, int j) {
        v.included = false;
        v.detail = why;
        v.failing_set = culprit;
        v.failing_j = j;
        v.counterexample = find_counterexample(g, b, m, cx_max_len, cx_budget);
    };

    const label_set& start_sink = cr.m[0][z];
    bool first_check_fails =
        mode == closure_mode::faithful
            ? (!start_sink.empty() && !is_identity_singleton(b, start_sink))
            : !detail::within_identity(b, balanced_filter(start_sink));
    if (first_check_fails) {
        fail("start-to-sink label set differs from the identity singleton", start_sink, -1);
        v.star_count = cr.star_count;
        return v;
    }

    for (size_t j = 0; j <= z; ++j) {
        if (cr.m[0][j].empty() || cr.m[j][j].empty() || cr.m[j][z].empty()) continue;
        label_set st = set_star(b, cr.m[j][j], cr.m[j][z], cap);
        ++cr.star_count;
        v.max_set_size = std::max(v.max_set_size, st.size());
        bool bad = mode == closure_mode::faithful
                       ? !is_identity_singleton(b, st)
                       : !detail::within_identity(b, balanced_filter(st));
        if (bad) {
            v.star_count = cr.star_count;
            fail("loop conjugates at vertex " + d.vertex_names[j] +
                     " differ from the identity singleton",
                 st, static_cast<int>(j));
            return v;
        }
    }
    v.star_count = cr.star_count;
    v.included = true;
    return v;
}

// ---------------------------------------------------------------------------
// literal walk families (test oracle)

// A walk is the sequence of arc indices it traverses.
using walk = std::vector<std::int32_t>;

// family_table[k][i][j] is the walk family at level k. Total stored walks are
// bounded by the budget; intended for test-scale diagrams only.
using family_table = std::vector<std::vector<std::vector<std::vector<walk>>>>;

inline family_table build_walk_families(const diagram& d, int k_max, size_t budget = 1000000) {
    size_t n1 = static_cast<size_t>(d.vertex_count());
    family_table table;
    std::vector<std::vector<std::set<walk>>> cur(n1, std::vector<std::set<walk>>(n1));
    for (size_t a = 0; a < d.arcs.size(); ++a)
        cur[static_cast<size_t>(d.arcs[a].from)][static_cast<size_t>(d.arcs[a].to)].insert(
            {static_cast<std::int32_t>(a)});
    size_t total = d.arcs.size();
    auto snapshot = [&] {
        std::vector<std::vector<std::vector<walk>>> level(
            n1, std::vector<std::vector<walk>>(n1));
        for (size_t i = 0; i < n1; ++i)
            for (size_t j = 0; j < n1; ++j)
                level[i][j].assign(cur[i][j].begin(), cur[i][j].end());
        return level;
    };
    table.push_back(snapshot());
    for (int k = 1; k <= k_max; ++k) {
        size_t pivot = static_cast<size_t>(k - 1);
        std::vector<std::vector<std::set<walk>>> nxt = cur;
        for (size_t i = 0; i < n1; ++i) {
            for (size_t j = 0; j < n1; ++j) {
                for (const auto& w1 : cur[i][pivot]) {
                    for (const auto& w2 : cur[pivot][j]) {
                        walk w = w1;
                        w.insert(w.end(), w2.begin(), w2.end());
                        if (nxt[i][j].insert(std::move(w)).second &&
                            ++total > budget)
                            throw budget_error("walk family budget exceeded");
                    }
                }
            }
        }
        cur = std::move(nxt);
        table.push_back(snapshot());
    }
    return table;
}

// The walk family from vertex i to vertex j at level k (0-based vertices,
// level 0 = single arcs).
inline std::vector<walk> enumerate_walks(const diagram& d, int i, int j, int k,
                                         size_t budget = 1000000) {
    auto table = build_walk_families(d, k, budget);
    return table[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)];
}

inline ulabel walk_label(const diagram& d, const walk& w, const group_backend& b) {
    ulabel out = u_one(b);
    for (std::int32_t a : w) out = u_mul(b, out, d.arcs[static_cast<size_t>(a)].label);
    return out;
}

inline label_set walk_labels(const diagram& d, const std::vector<walk>& ws,
                             const group_backend& b) {
    std::vector<ulabel> out;
    out.reserve(ws.size());
    for (const auto& w : ws) out.push_back(walk_label(d, w, b));
    return label_set(std::move(out));
}

// The terminal word a walk spells: the letters of its terminal-production
// arcs in traversal order.
inline word walk_word(const diagram& d, const walk& w) {
    word out;
    for (std::int32_t a : w) {
        std::int32_t letter = d.arcs[static_cast<size_t>(a)].letter;
        if (letter >= 0) out.push_back(letter);
    }
    return out;
}

} // namespace cfgi
