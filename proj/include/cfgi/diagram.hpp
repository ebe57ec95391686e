#pragma once

// Transition diagram of a CNF grammar: vertices are the nonterminals plus a
// fresh sink Z at index n. A terminal production A -> a contributes an arc
// A -> Z labeled (image of a, eps); a binary production A -> B C contributes
// A -> B labeled (identity, C-opener) and Z -> C labeled (identity,
// C-closer). There are no other arcs.

#include <cstdint>
#include <string>
#include <vector>

#include "cfgi/grammar.hpp"
#include "cfgi/group.hpp"
#include "cfgi/semiring.hpp"

namespace cfgi {

struct arc {
    std::int32_t from = -1;
    std::int32_t to = -1;
    ulabel label;
    // Provenance for walk-spelling in tests: terminal id for a terminal
    // production, -1 for an eps production, -2 for binary-production arcs.
    // Not part of arc identity.
    std::int32_t letter = -2;
};

struct diagram {
    std::int32_t n = 0; // nonterminal count; vertex n is the sink
    std::vector<std::string> vertex_names;
    std::vector<arc> arcs;         // deduplicated by (from, to, label)
    size_t arcs_before_dedup = 0;

    std::int32_t sink() const { return n; }
    std::int32_t vertex_count() const { return n + 1; }
};

inline diagram build_diagram(const grammar& g, const bound_morphism& m,
                             const group_backend& b) {
    diagram d;
    d.n = g.nt_count();
    d.vertex_names = g.nonterminals;
    std::string sink_name = "Z";
    while (std::find(d.vertex_names.begin(), d.vertex_names.end(), sink_name) !=
           d.vertex_names.end())
        sink_name += "_";
    d.vertex_names.push_back(sink_name);

    auto add = [&](arc a) {
        ++d.arcs_before_dedup;
        for (const auto& e : d.arcs)
            if (e.from == a.from && e.to == a.to && e.label == a.label) return;
        d.arcs.push_back(std::move(a));
    };

    for (const auto& p : g.productions) {
        if (p.is_pair()) {
            std::int32_t c = p.rhs[1].id;
            add({p.lhs, p.rhs[0].id, {b.identity(), {c + 1}}, -2});
            add({d.sink(), c, {b.identity(), {-(c + 1)}}, -2});
        } else if (p.is_term()) {
            add({p.lhs, d.sink(), {b.canon(apply_morphism(m, {p.rhs[0].id})), {}}, p.rhs[0].id});
        } else {
            add({p.lhs, d.sink(), {b.identity(), {}}, -1});
        }
    }
    return d;
}

// Entry (i, j) holds the labels of all arcs from vertex i to vertex j.
inline label_matrix initial_matrix(const diagram& d) {
    size_t n1 = static_cast<size_t>(d.vertex_count());
    label_matrix m(n1, std::vector<label_set>(n1));
    for (const auto& a : d.arcs)
        m[static_cast<size_t>(a.from)][static_cast<size_t>(a.to)].insert(a.label);
    return m;
}

inline std::string to_dot(const diagram& d, const group_backend& b) {
    std::string out = "digraph H {\n  rankdir=LR;\n";
    std::vector<std::string> nt_names(d.vertex_names.begin(), d.vertex_names.end() - 1);
    for (std::int32_t v = 0; v <= d.n; ++v)
        out += "  n" + std::to_string(v) + " [label=\"" + d.vertex_names[static_cast<size_t>(v)] +
               "\"" + (v == d.sink() ? ", shape=doublecircle" : "") + "];\n";
    for (const auto& a : d.arcs)
        out += "  n" + std::to_string(a.from) + " -> n" + std::to_string(a.to) + " [label=\"" +
               render_label(b, a.label, nt_names) + "\"];\n";
    out += "}\n";
    return out;
}

} // namespace cfgi
