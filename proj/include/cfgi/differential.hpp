#pragma once

// Differential testing harness: seeded random instances run through every
// decision method, with per-row agreement recorded. Budget overruns on an
// instance are recorded as withheld outcomes, never as crashes or guesses.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfgi/closure.hpp"
#include "cfgi/grammar.hpp"
#include "cfgi/group.hpp"
#include "cfgi/oracle.hpp"
#include "cfgi/report.hpp"
#include "cfgi/util.hpp"
#include "cfgi/verdict.hpp"

namespace cfgi {

struct diff_bounds {
    int max_nonterminals = 4;
    int max_productions = 8;
    int max_rank = 2;
    int enum_word_len = 6; // bound for the enumeration method and counterexample search
    int pumping_p = 0;     // 0 picks the grammar-size default
    int pumping_q = 0;
    size_t label_cap = default_label_cap;
    size_t word_budget = 500000;
};

struct diff_instance {
    grammar g; // CNF, pruned
    group_backend backend;
    bound_morphism m;
};

// Bounded-enumeration method: included iff no language word within the length
// bound has a non-identity image. A true answer is evidence, not proof.
inline verdict enumeration_decide(const grammar& g, const group_backend& b,
                                  const bound_morphism& m, int max_len,
                                  size_t budget = 500000) {
    verdict v;
    v.meth = method::enumeration;
    auto cx = find_counterexample(g, b, m, max_len, budget);
    v.included = !cx.has_value();
    v.counterexample = cx;
    if (cx)
        v.detail = "word with non-identity image found by bounded enumeration";
    else
        v.detail =
            "no violating word within length " + std::to_string(max_len) + " (bounded check)";
    return v;
}

inline std::string describe_grammar(const grammar& g) {
    std::string out;
    for (size_t i = 0; i < g.productions.size(); ++i) {
        const auto& p = g.productions[i];
        if (i) out += "; ";
        out += g.nonterminals[static_cast<size_t>(p.lhs)] + " -> ";
        if (p.is_eps()) {
            out += "eps";
        } else {
            for (size_t k = 0; k < p.rhs.size(); ++k) {
                if (k) out += " ";
                const auto& s = p.rhs[k];
                out += s.is_term ? "'" + g.terminals[static_cast<size_t>(s.id)] + "'"
                                 : g.nonterminals[static_cast<size_t>(s.id)];
            }
        }
    }
    if (g.productions.empty()) out = "(no productions)";
    return out;
}

inline std::string describe_morphism(const grammar& g, const bound_morphism& m) {
    std::string out;
    for (size_t t = 0; t < g.terminals.size(); ++t) {
        if (t) out += ", ";
        out += g.terminals[t] + " -> " + render_gword(m[t]);
    }
    if (g.terminals.empty()) out = "(no terminals)";
    return out;
}

namespace detail {

inline const std::vector<std::string> nt_pool{"S", "A", "B", "C", "D", "E", "F", "G"};
inline const std::vector<std::string> term_pool{"a", "b", "c"};

// Deterministic random instance: CNF-shaped productions, then pruned.
// Degenerate results (empty language, eps-only) are kept on purpose.
inline diff_instance gen_instance(rng& r, const diff_bounds& bounds) {
    int n = 1 + static_cast<int>(r.below(static_cast<uint64_t>(bounds.max_nonterminals)));
    int nterm = 1 + static_cast<int>(r.below(3));
    grammar g;
    for (int i = 0; i < n; ++i) g.nonterminals.push_back(nt_pool[static_cast<size_t>(i)]);
    for (int t = 0; t < nterm; ++t) g.terminals.push_back(term_pool[static_cast<size_t>(t)]);
    size_t budget_prods = static_cast<size_t>(bounds.max_productions);
    for (int a = 0; a < n && g.productions.size() < budget_prods; ++a) {
        int count = 1 + static_cast<int>(r.below(2));
        for (int c = 0; c < count && g.productions.size() < budget_prods; ++c) {
            production p;
            p.lhs = a;
            if (n >= 2 && r.chance(0.5)) {
                p.rhs = {symbol{false, static_cast<std::int32_t>(r.below(static_cast<uint64_t>(n)))},
                         symbol{false, static_cast<std::int32_t>(r.below(static_cast<uint64_t>(n)))}};
            } else {
                p.rhs = {symbol{true, static_cast<std::int32_t>(r.below(static_cast<uint64_t>(nterm)))}};
            }
            g.productions.push_back(std::move(p));
        }
    }
    bool start_on_rhs = false;
    for (const auto& p : g.productions)
        for (const auto& s : p.rhs)
            if (!s.is_term && s.id == 0) start_on_rhs = true;
    if (!start_on_rhs && r.chance(0.15)) g.productions.push_back(production{0, {}});
    std::sort(g.productions.begin(), g.productions.end());
    g.productions.erase(std::unique(g.productions.begin(), g.productions.end()),
                        g.productions.end());
    // restore start-first order after the dedup sort
    std::stable_sort(g.productions.begin(), g.productions.end(),
                     [](const production& x, const production& y) { return x.lhs < y.lhs; });
    grammar pruned = prune_useless(g);

    group_backend b;
    int rank = 1 + static_cast<int>(r.below(static_cast<uint64_t>(bounds.max_rank)));
    switch (r.below(3)) {
    case 0: b = group_backend::make_free(rank); break;
    case 1: b = group_backend::make_abelian(rank); break;
    default: {
        int degree = 3 + static_cast<int>(r.below(2));
        std::vector<std::vector<std::int64_t>> gens;
        for (int k = 0; k < rank; ++k) {
            std::vector<std::int64_t> img(static_cast<size_t>(degree));
            std::iota(img.begin(), img.end(), 0);
            for (size_t i = img.size(); i > 1; --i)
                std::swap(img[i - 1], img[r.below(i)]);
            gens.push_back(std::move(img));
        }
        b = group_backend::make_permutation(degree, std::move(gens));
        break;
    }
    }
    bound_morphism m;
    for (size_t t = 0; t < pruned.terminals.size(); ++t) {
        gword img;
        size_t len = r.below(3);
        for (size_t i = 0; i < len; ++i) {
            std::int32_t k = 1 + static_cast<std::int32_t>(r.below(static_cast<uint64_t>(b.rank())));
            img.push_back(r.chance(0.5) ? k : -k);
        }
        m.push_back(std::move(img));
    }
    return diff_instance{std::move(pruned), std::move(b), std::move(m)};
}

} // namespace detail

struct diff_row {
    size_t index = 0;
    diff_instance inst;
    std::vector<method_outcome> outcomes;
    bool all_agree = true;
    bool any_withheld = false;
};

struct diff_result {
    std::vector<diff_row> rows;
    size_t disagree_rows = 0;
    size_t withheld_rows = 0;
    int exit_code = 0;
    ordered_json report;
};

inline method_outcome run_method_guarded(method meth, const diff_instance& inst,
                                         const diff_bounds& bounds) {
    method_outcome o;
    o.meth = meth;
    stopwatch sw;
    try {
        switch (meth) {
        case method::faithful:
            o.v = decide(inst.g, inst.backend, inst.m, closure_mode::faithful, bounds.label_cap,
                         bounds.enum_word_len, bounds.word_budget);
            break;
        case method::filtered:
            o.v = decide(inst.g, inst.backend, inst.m, closure_mode::filtered, bounds.label_cap,
                         bounds.enum_word_len, bounds.word_budget);
            break;
        case method::witness:
            o.v = witness_decide(inst.g, inst.backend, inst.m);
            break;
        case method::anisimov: {
            pumping_budget pb;
            pb.p = bounds.pumping_p > 0 ? bounds.pumping_p : default_pumping_bound(inst.g);
            pb.q = bounds.pumping_q > 0 ? bounds.pumping_q : default_pumping_bound(inst.g);
            pb.node_budget = bounds.word_budget;
            o.v = anisimov_decide(inst.g, inst.backend, inst.m, pb);
            break;
        }
        case method::enumeration:
            o.v = enumeration_decide(inst.g, inst.backend, inst.m, bounds.enum_word_len,
                                     bounds.word_budget);
            break;
        }
    } catch (const budget_error& e) {
        o.withheld = true;
        o.error = e.what();
    }
    o.wall_ms = sw.ms();
    return o;
}

// Seeded differential run: `forced` instances occupy the leading rows, the
// rest are generated from the seed. Runs faithful, filtered, witness, and
// enumeration on every row.
inline diff_result differential_run(size_t count, uint64_t seed, const diff_bounds& bounds,
                                    const std::vector<diff_instance>& forced = {}) {
    diff_result res;
    stopwatch sw_total;
    const method methods[] = {method::faithful, method::filtered, method::witness,
                              method::enumeration};
    for (size_t idx = 0; idx < count; ++idx) {
        diff_row row;
        row.index = idx;
        if (idx < forced.size()) {
            row.inst = forced[idx];
        } else {
            rng r(seed * 1000003 + idx);
            row.inst = detail::gen_instance(r, bounds);
        }
        for (method meth : methods) {
            auto o = run_method_guarded(meth, row.inst, bounds);
            row.any_withheld |= o.withheld;
            row.outcomes.push_back(std::move(o));
        }
        row.all_agree = !any_disagreement(row.outcomes);
        if (!row.all_agree) ++res.disagree_rows;
        if (row.any_withheld) ++res.withheld_rows;
        res.rows.push_back(std::move(row));
    }
    res.exit_code = res.disagree_rows > 0 ? 2 : 0;

    ordered_json j;
    j["differential"] = ordered_json{
        {"count", count},
        {"seed", seed},
        {"bounds", ordered_json{{"max_nonterminals", bounds.max_nonterminals},
                                {"max_productions", bounds.max_productions},
                                {"max_rank", bounds.max_rank},
                                {"enum_word_len", bounds.enum_word_len},
                                {"label_cap", bounds.label_cap}}}};
    ordered_json rows = ordered_json::array();
    for (const auto& row : res.rows) {
        ordered_json rj;
        rj["index"] = row.index;
        rj["grammar"] = describe_grammar(row.inst.g);
        rj["group"] = row.inst.backend.describe();
        rj["morphism"] = describe_morphism(row.inst.g, row.inst.m);
        rj["empty_language"] = row.inst.g.empty_language;
        ordered_json ms = ordered_json::array();
        for (const auto& o : row.outcomes) ms.push_back(outcome_json(o, row.inst.g, row.inst.backend));
        rj["methods"] = std::move(ms);
        rj["agreement"] = agreement_json(row.outcomes);
        rj["all_agree"] = row.all_agree;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    ordered_json disagreeing = ordered_json::array();
    for (const auto& row : res.rows)
        if (!row.all_agree) disagreeing.push_back(row.index);
    j["aggregate"] = ordered_json{{"instances", count},
                                  {"rows_all_agree", count - res.disagree_rows},
                                  {"rows_with_disagreement", res.disagree_rows},
                                  {"rows_with_withheld", res.withheld_rows},
                                  {"disagreeing_indices", std::move(disagreeing)}};
    j["exit_code"] = res.exit_code;
    j["total_ms"] = sw_total.ms();
    res.report = std::move(j);
    return res;
}

} // namespace cfgi
