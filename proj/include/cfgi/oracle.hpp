#pragma once

// Independent ground-truth procedures.
//
// witness_decide: assigns every nonterminal the group value of one shortest
// witness word and checks all productions multiplicatively. Sound and
// complete on pruned grammars: if two words derivable from the same
// nonterminal had different group values, embedding both into one reachable
// context would produce language words with different values, at most one of
// which can be the identity. So inclusion forces per-nonterminal value
// consistency, which is exactly what the production equations test.
//
// anisimov_decide: the finite pumping-set check. Included iff every language
// word of length <= p maps to the identity and every pumped combination
// u w v w~ (w~ the group inverse of w's image) does, where (u, v) ranges over
// self-embedding contexts with |uv| <= q and w over the nonterminal's
// shortest witness plus its derivable words with |uwv| <= q. Implemented over
// group values with per-value minimal-length representatives, which decides
// exactly the same condition as word-level enumeration: the tests depend on
// words only through their values, every value pair is checked at its minimal
// realizable length, and candidate-w sets only shrink as lengths grow.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfgi/grammar.hpp"
#include "cfgi/group.hpp"
#include "cfgi/verdict.hpp"

namespace cfgi {

struct pumping_budget {
    int p = 1;
    int q = 1;
    size_t node_budget = 500000;
};

// 2^n, the safe pumping bound for a CNF grammar with n nonterminals.
inline int default_pumping_bound(const grammar& g) {
    int n = g.nt_count();
    if (n >= 24) return 1 << 24; // beyond any feasible budget anyway
    return 1 << n;
}

namespace detail {

// Shortest witness word per nonterminal, minimal by (length, lex). Total on
// pruned grammars: every nonterminal is productive.
inline std::vector<word> shortest_witnesses(const grammar& g) {
    size_t n = g.nonterminals.size();
    std::vector<std::optional<word>> wit(n);
    auto better = [](const word& a, const word& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            std::optional<word> cand;
            if (p.is_term()) {
                cand = word{p.rhs[0].id};
            } else if (p.is_eps()) {
                cand = word{};
            } else if (p.is_pair()) {
                auto& wb = wit[static_cast<size_t>(p.rhs[0].id)];
                auto& wc = wit[static_cast<size_t>(p.rhs[1].id)];
                if (wb && wc) {
                    cand = *wb;
                    cand->insert(cand->end(), wc->begin(), wc->end());
                }
            }
            if (!cand) continue;
            auto& cur = wit[static_cast<size_t>(p.lhs)];
            if (!cur || better(*cand, *cur)) cur = std::move(cand), changed = true;
        }
    }
    std::vector<word> out;
    out.reserve(n);
    for (auto& w : wit) out.push_back(w.value());
    return out;
}

// Shortest derivation context (u, v) with start => u A v per nonterminal,
// minimal by (|u| + |v|, (u, v) lex).
inline std::vector<std::pair<word, word>> shortest_contexts(const grammar& g,
                                                            const std::vector<word>& wit) {
    size_t n = g.nonterminals.size();
    std::vector<std::optional<std::pair<word, word>>> ctx(n);
    ctx[0] = {word{}, word{}};
    auto better = [](const std::pair<word, word>& a, const std::pair<word, word>& b) {
        size_t la = a.first.size() + a.second.size(), lb = b.first.size() + b.second.size();
        return la != lb ? la < lb : a < b;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (!p.is_pair() || !ctx[static_cast<size_t>(p.lhs)]) continue;
            const auto& [u, v] = *ctx[static_cast<size_t>(p.lhs)];
            size_t bb = static_cast<size_t>(p.rhs[0].id), cc = static_cast<size_t>(p.rhs[1].id);
            std::pair<word, word> for_b{u, wit[cc]};
            for_b.second.insert(for_b.second.end(), v.begin(), v.end());
            std::pair<word, word> for_c{u, v};
            for_c.first.insert(for_c.first.end(), wit[bb].begin(), wit[bb].end());
            if (!ctx[bb] || better(for_b, *ctx[bb])) ctx[bb] = std::move(for_b), changed = true;
            if (!ctx[cc] || better(for_c, *ctx[cc])) ctx[cc] = std::move(for_c), changed = true;
        }
    }
    std::vector<std::pair<word, word>> out;
    out.reserve(n);
    for (auto& c : ctx) out.push_back(c.value());
    return out;
}

} // namespace detail

inline verdict witness_decide(const grammar& g, const group_backend& b,
                              const bound_morphism& m) {
    verdict v;
    v.meth = method::witness;
    if (g.empty_language) {
        v.included = true;
        v.detail = "language is empty; inclusion holds vacuously";
        return v;
    }
    auto wit = detail::shortest_witnesses(g);
    size_t n = g.nonterminals.size();
    std::vector<group_elem> phi(n);
    for (size_t a = 0; a < n; ++a) phi[a] = b.canon(apply_morphism(m, wit[a]));

    auto fail_at = [&](const production& p, const word& direct) {
        auto ctx = detail::shortest_contexts(g, wit);
        const auto& [u, vv] = ctx[static_cast<size_t>(p.lhs)];
        word c1 = u;
        c1.insert(c1.end(), wit[static_cast<size_t>(p.lhs)].begin(),
                  wit[static_cast<size_t>(p.lhs)].end());
        c1.insert(c1.end(), vv.begin(), vv.end());
        word c2 = u;
        c2.insert(c2.end(), direct.begin(), direct.end());
        c2.insert(c2.end(), vv.begin(), vv.end());
        // the two candidates have distinct group images, so at most one is
        // the identity
        for (const word& c : {c1, c2}) {
            if (!b.is_identity(b.canon(apply_morphism(m, c)))) {
                v.counterexample = c;
                break;
            }
        }
        v.included = false;
    };

    for (const auto& p : g.productions) {
        if (p.is_pair()) {
            group_elem expect = b.mul(phi[static_cast<size_t>(p.rhs[0].id)],
                                      phi[static_cast<size_t>(p.rhs[1].id)]);
            if (phi[static_cast<size_t>(p.lhs)] != expect) {
                word direct = wit[static_cast<size_t>(p.rhs[0].id)];
                direct.insert(direct.end(), wit[static_cast<size_t>(p.rhs[1].id)].begin(),
                              wit[static_cast<size_t>(p.rhs[1].id)].end());
                v.detail = "witness value of " + g.nonterminals[static_cast<size_t>(p.lhs)] +
                           " differs across derivations";
                fail_at(p, direct);
                return v;
            }
        } else if (p.is_term()) {
            if (phi[static_cast<size_t>(p.lhs)] !=
                b.canon(apply_morphism(m, {p.rhs[0].id}))) {
                v.detail = "witness value of " + g.nonterminals[static_cast<size_t>(p.lhs)] +
                           " differs across derivations";
                fail_at(p, {p.rhs[0].id});
                return v;
            }
        }
    }
    if (!b.is_identity(phi[0])) {
        v.included = false;
        v.detail = "shortest language word has a non-identity image";
        v.counterexample = wit[0];
        return v;
    }
    v.included = true;
    return v;
}

inline verdict anisimov_decide(const grammar& g, const group_backend& b,
                               const bound_morphism& m, const pumping_budget& budget) {
    verdict v;
    v.meth = method::anisimov;
    if (g.empty_language) {
        v.included = true;
        v.detail = "language is empty; inclusion holds vacuously";
        return v;
    }
    int p = budget.p, q = budget.q;
    auto vt = detail::build_value_table(g, b, m, std::max(p, q), budget.node_budget);

    // short-word set: every language word of length <= p maps to the identity
    for (size_t l = 0; l <= static_cast<size_t>(p); ++l) {
        std::optional<word> bad;
        for (const auto& [val, rep] : vt.v[0][l]) {
            if (b.is_identity(val)) continue;
            if (!bad || rep < *bad) bad = rep;
        }
        if (bad) {
            v.included = false;
            v.detail = "language word of length " + std::to_string(l) +
                       " has a non-identity image";
            v.counterexample = bad;
            return v;
        }
    }

    // pumped set: context value pairs (value(u), value(v)) for A => u A v,
    // tracked with the minimal realizable |uv|
    size_t n = g.nonterminals.size();
    using pair_map = std::map<std::pair<group_elem, group_elem>, int>;
    std::vector<std::vector<pair_map>> cp(n, std::vector<pair_map>(n));
    for (size_t x = 0; x < n; ++x) cp[x][x][{b.identity(), b.identity()}] = 0;
    size_t entries = n;
    auto relax = [&](pair_map& pm, std::pair<group_elem, group_elem> key, int len) {
        auto [it, fresh] = pm.try_emplace(std::move(key), len);
        if (fresh) {
            if (++entries > budget.node_budget)
                throw budget_error("context pair budget exceeded");
            return true;
        }
        if (len < it->second) {
            it->second = len;
            return true;
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& pr : g.productions) {
            if (!pr.is_pair()) continue;
            size_t a = static_cast<size_t>(pr.lhs);
            size_t bb = static_cast<size_t>(pr.rhs[0].id), cc = static_cast<size_t>(pr.rhs[1].id);
            for (size_t x = 0; x < n; ++x) {
                for (const auto& [key, l1] : cp[bb][x]) {
                    for (int l2 = 1; l1 + l2 <= q; ++l2)
                        for (const auto& [gw, rep] : vt.v[cc][static_cast<size_t>(l2)])
                            changed |= relax(cp[a][x], {key.first, b.mul(key.second, gw)},
                                             l1 + l2);
                }
                for (const auto& [key, l1] : cp[cc][x]) {
                    for (int l2 = 1; l1 + l2 <= q; ++l2)
                        for (const auto& [gw, rep] : vt.v[bb][static_cast<size_t>(l2)])
                            changed |= relax(cp[a][x], {b.mul(gw, key.first), key.second},
                                             l1 + l2);
                }
            }
        }
    }

    auto wit = detail::shortest_witnesses(g);
    for (size_t a = 0; a < n; ++a) {
        group_elem wit_val = b.canon(apply_morphism(m, wit[a]));
        for (const auto& [key, lmin] : cp[a][a]) {
            if (lmin == 0) continue; // uv must be nonempty
            const auto& [gu, gv] = key;
            std::vector<group_elem> ws{wit_val};
            for (int l2 = 0; l2 + lmin <= q; ++l2)
                for (const auto& [gw, rep] : vt.v[a][static_cast<size_t>(l2)]) ws.push_back(gw);
            for (const auto& gw : ws) {
                group_elem total = b.mul(b.mul(b.mul(gu, gw), gv), b.inv(gw));
                if (!b.is_identity(total)) {
                    v.included = false;
                    v.detail = "pumped combination at " + g.nonterminals[a] +
                               " has a non-identity image (|uv| = " + std::to_string(lmin) + ")";
                    return v;
                }
            }
        }
    }
    v.included = true;
    return v;
}

} // namespace cfgi
