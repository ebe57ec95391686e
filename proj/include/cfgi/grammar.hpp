#pragma once

// Context-free grammars: parsing, Chomsky-normal-form conversion, useless
// symbol removal, and bounded word/pumping-pair enumeration.
//
// Nonterminal 0 is always the start symbol. After to_cnf every production is
// A -> B C, A -> 'a', or A -> eps, and an eps production can only sit at the
// start symbol (which then occurs on no right-hand side).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfgi/errors.hpp"
#include "cfgi/util.hpp"

namespace cfgi {

// Terminal word: sequence of terminal ids.
using word = std::vector<std::int32_t>;

struct symbol {
    bool is_term = false;
    std::int32_t id = -1;
    auto operator<=>(const symbol&) const = default;
};

// rhs empty means an eps production.
struct production {
    std::int32_t lhs = -1;
    std::vector<symbol> rhs;
    auto operator<=>(const production&) const = default;
    bool is_eps() const { return rhs.empty(); }
    bool is_term() const { return rhs.size() == 1 && rhs[0].is_term; }
    bool is_pair() const {
        return rhs.size() == 2 && !rhs[0].is_term && !rhs[1].is_term;
    }
};

struct grammar {
    std::vector<std::string> nonterminals; // [0] is the start symbol
    std::vector<std::string> terminals;
    std::vector<production> productions;   // deduplicated, declaration order
    bool empty_language = false;           // set by prune_useless

    bool operator==(const grammar&) const = default;
    std::int32_t nt_count() const { return static_cast<std::int32_t>(nonterminals.size()); }
};

// length-lexicographic word order; ties broken by terminal ids
inline bool word_less(const word& a, const word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

inline bool is_cnf(const grammar& g) {
    bool has_eps = false;
    for (const auto& p : g.productions) {
        if (p.is_eps())
            has_eps = true;
        else if (!p.is_term() && !p.is_pair())
            return false;
        if (p.is_eps() && p.lhs != 0) return false;
    }
    if (has_eps)
        for (const auto& p : g.productions)
            for (const auto& s : p.rhs)
                if (!s.is_term && s.id == 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// parsing

namespace detail {

inline bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
            return false;
    return true;
}

} // namespace detail

// Grammar file format:
//   start: <NT>
//   <NT> -> <sym> <sym> | <NT> -> '<terminal>' | <NT> -> eps
// where <sym> is a nonterminal name or a quoted terminal; '#' starts a
// comment. Unit productions (one unquoted symbol) are accepted and left for
// to_cnf to eliminate.
inline grammar parse_grammar(const std::string& text) {
    struct raw_prod {
        int line;
        std::string lhs;
        std::vector<std::pair<bool, std::string>> rhs; // (is_term, name)
        bool eps = false;
    };
    std::vector<raw_prod> raw;
    std::optional<std::string> start;

    auto lines = split(text, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = lines[ln];
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        int lno = static_cast<int>(ln + 1);

        if (line.rfind("start:", 0) == 0) {
            if (start) throw parse_error(lno, "duplicate start declaration");
            std::string s = trim(line.substr(6));
            if (!detail::is_ident(s)) throw parse_error(lno, "bad start symbol '" + s + "'");
            start = s;
            continue;
        }
        auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw parse_error(lno, "expected 'start:' or a production with '->'");
        std::string lhs = trim(line.substr(0, arrow));
        if (!detail::is_ident(lhs)) throw parse_error(lno, "bad nonterminal '" + lhs + "'");
        raw_prod rp;
        rp.line = lno;
        rp.lhs = lhs;
        auto toks = tokens(line.substr(arrow + 2));
        if (toks.empty()) throw parse_error(lno, "empty right-hand side (use eps)");
        if (toks.size() == 1 && toks[0] == "eps") {
            rp.eps = true;
        } else {
            for (const auto& t : toks) {
                if (t == "eps")
                    throw parse_error(lno, "eps must be the entire right-hand side");
                if (t.size() >= 2 && t.front() == '\'') {
                    if (t.back() != '\'' || t.size() < 3)
                        throw parse_error(lno, "unterminated terminal " + t);
                    rp.rhs.emplace_back(true, t.substr(1, t.size() - 2));
                } else if (detail::is_ident(t)) {
                    rp.rhs.emplace_back(false, t);
                } else {
                    throw parse_error(lno, "bad symbol '" + t + "'");
                }
            }
        }
        raw.push_back(std::move(rp));
    }

    if (!start) throw parse_error("missing start declaration");

    grammar g;
    std::map<std::string, std::int32_t> nt_id, term_id;
    auto add_nt = [&](const std::string& n) {
        if (!nt_id.count(n)) {
            nt_id[n] = static_cast<std::int32_t>(g.nonterminals.size());
            g.nonterminals.push_back(n);
        }
    };
    add_nt(*start);
    for (const auto& rp : raw) add_nt(rp.lhs);
    for (const auto& rp : raw)
        for (const auto& [is_term, name] : rp.rhs)
            if (is_term && !term_id.count(name)) {
                term_id[name] = static_cast<std::int32_t>(g.terminals.size());
                g.terminals.push_back(name);
            }

    std::set<production> seen;
    for (const auto& rp : raw) {
        production p;
        p.lhs = nt_id[rp.lhs];
        if (!rp.eps) {
            for (const auto& [is_term, name] : rp.rhs) {
                if (is_term) {
                    p.rhs.push_back({true, term_id[name]});
                } else {
                    auto it = nt_id.find(name);
                    if (it == nt_id.end())
                        throw parse_error(rp.line, "undeclared symbol '" + name + "'");
                    p.rhs.push_back({false, it->second});
                }
            }
        }
        if (seen.insert(p).second) g.productions.push_back(p);
    }
    if (g.productions.empty() ||
        std::none_of(g.productions.begin(), g.productions.end(),
                     [](const production& p) { return p.lhs == 0; }))
        throw parse_error("start symbol '" + *start + "' has no productions");
    return g;
}

// ---------------------------------------------------------------------------
// normalization

namespace detail {

inline std::vector<bool> nullable_set(const grammar& g) {
    std::vector<bool> nl(g.nonterminals.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (nl[static_cast<size_t>(p.lhs)]) continue;
            bool all = true;
            for (const auto& s : p.rhs)
                if (s.is_term || !nl[static_cast<size_t>(s.id)]) {
                    all = false;
                    break;
                }
            if (all) nl[static_cast<size_t>(p.lhs)] = true, changed = true;
        }
    }
    return nl;
}

inline std::string fresh_name(std::vector<std::string>& names, const std::string& base) {
    std::string cand = base;
    int suffix = 1;
    while (std::find(names.begin(), names.end(), cand) != names.end())
        cand = base + "_" + std::to_string(++suffix);
    names.push_back(cand);
    return cand;
}

} // namespace detail

// Standard START/TERM/BIN/DEL/UNIT pipeline with a fixed-point shortcut and a
// final reachability sweep (so e.g. a unit chain S -> A, A -> 'a' collapses to
// just S -> 'a'). Productivity pruning is left to prune_useless. Terminal ids
// are never renumbered, so word sets stay comparable across the conversion.
inline grammar to_cnf(const grammar& g_in) {
    if (is_cnf(g_in)) return g_in;

    grammar g = g_in;
    auto nullable = detail::nullable_set(g);
    bool eps_in_l = !g.nonterminals.empty() && nullable[0];

    // START: fresh start symbol, only when the old one both derives eps and
    // occurs on a right-hand side (retaining its eps production would
    // otherwise leak eps into other derivations).
    bool start_on_rhs = std::any_of(g.productions.begin(), g.productions.end(), [](const production& p) {
        return std::any_of(p.rhs.begin(), p.rhs.end(),
                           [](const symbol& s) { return !s.is_term && s.id == 0; });
    });
    if (eps_in_l && start_on_rhs) {
        std::vector<std::string> names = g.nonterminals;
        std::string s0 = detail::fresh_name(names, "S0");
        grammar g2;
        g2.terminals = g.terminals;
        g2.nonterminals.push_back(s0);
        for (const auto& n : g.nonterminals) g2.nonterminals.push_back(n);
        production unit;
        unit.lhs = 0;
        unit.rhs.push_back({false, 1});
        g2.productions.push_back(unit);
        for (auto p : g.productions) {
            p.lhs += 1;
            for (auto& s : p.rhs)
                if (!s.is_term) s.id += 1;
            g2.productions.push_back(p);
        }
        g = std::move(g2);
    }

    // TERM: terminals inside multi-symbol right-hand sides get wrappers.
    {
        std::map<std::int32_t, std::int32_t> wrapper;
        std::vector<production> out;
        std::vector<production> wrappers;
        for (auto p : g.productions) {
            if (p.rhs.size() >= 2) {
                for (auto& s : p.rhs) {
                    if (!s.is_term) continue;
                    auto it = wrapper.find(s.id);
                    std::int32_t w;
                    if (it == wrapper.end()) {
                        std::string nm = detail::fresh_name(
                            g.nonterminals, "T_" + g.terminals[static_cast<size_t>(s.id)]);
                        (void)nm;
                        w = static_cast<std::int32_t>(g.nonterminals.size()) - 1;
                        wrapper[s.id] = w;
                        production tp;
                        tp.lhs = w;
                        tp.rhs.push_back({true, s.id});
                        wrappers.push_back(tp);
                    } else {
                        w = it->second;
                    }
                    s = {false, w};
                }
            }
            out.push_back(std::move(p));
        }
        for (auto& w : wrappers) out.push_back(std::move(w));
        g.productions = std::move(out);
    }

    // BIN: split right-hand sides longer than two.
    {
        std::vector<production> out;
        for (auto p : g.productions) {
            while (p.rhs.size() > 2) {
                detail::fresh_name(g.nonterminals,
                                   g.nonterminals[static_cast<size_t>(p.lhs)] + "_bin");
                std::int32_t fresh = static_cast<std::int32_t>(g.nonterminals.size()) - 1;
                production tail;
                tail.lhs = fresh;
                tail.rhs.assign(p.rhs.begin() + 1, p.rhs.end());
                p.rhs.resize(1);
                p.rhs.push_back({false, fresh});
                out.push_back(p);
                p = std::move(tail);
            }
            out.push_back(std::move(p));
        }
        g.productions = std::move(out);
    }

    // DEL: drop eps productions; add variants with nullable symbols omitted.
    {
        nullable = detail::nullable_set(g);
        std::vector<production> out;
        for (const auto& p : g.productions) {
            if (p.is_eps()) continue;
            size_t n = p.rhs.size(); // <= 2 after BIN
            for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
                production v;
                v.lhs = p.lhs;
                bool valid = true;
                for (size_t i = 0; i < n; ++i) {
                    if (mask & (size_t{1} << i)) {
                        if (p.rhs[i].is_term || !nullable[static_cast<size_t>(p.rhs[i].id)]) {
                            valid = false;
                            break;
                        }
                    } else {
                        v.rhs.push_back(p.rhs[i]);
                    }
                }
                if (valid && !v.rhs.empty()) out.push_back(std::move(v));
            }
        }
        if (eps_in_l) {
            production e;
            e.lhs = 0;
            out.push_back(e);
        }
        g.productions = std::move(out);
    }

    // UNIT: for every unit pair (A, B), copy B's non-unit productions to A.
    {
        size_t n = g.nonterminals.size();
        std::vector<std::vector<bool>> pair(n, std::vector<bool>(n, false));
        for (size_t i = 0; i < n; ++i) pair[i][i] = true;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g.productions) {
                if (p.rhs.size() != 1 || p.rhs[0].is_term) continue;
                size_t b = static_cast<size_t>(p.rhs[0].id);
                for (size_t a = 0; a < n; ++a)
                    if (pair[a][static_cast<size_t>(p.lhs)] && !pair[a][b])
                        pair[a][b] = true, changed = true;
            }
        }
        std::vector<production> out;
        for (const auto& p : g.productions) {
            if (p.rhs.size() == 1 && !p.rhs[0].is_term) continue;
            if (p.is_eps()) {
                out.push_back(p); // eps lives at the start symbol only
                continue;
            }
            for (size_t a = 0; a < n; ++a) {
                if (!pair[a][static_cast<size_t>(p.lhs)]) continue;
                production cp = p;
                cp.lhs = static_cast<std::int32_t>(a);
                out.push_back(std::move(cp));
            }
        }
        g.productions = std::move(out);
    }

    // dedup, then drop nonterminals no longer reachable from the start
    {
        std::set<production> seen;
        std::vector<production> ded;
        for (auto& p : g.productions)
            if (seen.insert(p).second) ded.push_back(std::move(p));
        g.productions = std::move(ded);

        size_t n = g.nonterminals.size();
        std::vector<bool> reach(n, false);
        reach[0] = true;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g.productions) {
                if (!reach[static_cast<size_t>(p.lhs)]) continue;
                for (const auto& s : p.rhs)
                    if (!s.is_term && !reach[static_cast<size_t>(s.id)])
                        reach[static_cast<size_t>(s.id)] = true, changed = true;
            }
        }
        std::vector<std::int32_t> remap(n, -1);
        grammar g2;
        g2.terminals = g.terminals;
        for (size_t i = 0; i < n; ++i)
            if (reach[i]) {
                remap[i] = static_cast<std::int32_t>(g2.nonterminals.size());
                g2.nonterminals.push_back(g.nonterminals[i]);
            }
        for (auto p : g.productions) {
            if (!reach[static_cast<size_t>(p.lhs)]) continue;
            p.lhs = remap[static_cast<size_t>(p.lhs)];
            for (auto& s : p.rhs)
                if (!s.is_term) s.id = remap[static_cast<size_t>(s.id)];
            g2.productions.push_back(std::move(p));
        }
        g = std::move(g2);
    }
    return g;
}

// Keep only nonterminals that are productive and reachable. An unproductive
// start symbol flags the whole language empty.
inline grammar prune_useless(const grammar& g) {
    if (g.empty_language) return g;
    size_t n = g.nonterminals.size();
    std::vector<bool> prod(n, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (prod[static_cast<size_t>(p.lhs)]) continue;
            bool all = true;
            for (const auto& s : p.rhs)
                if (!s.is_term && !prod[static_cast<size_t>(s.id)]) {
                    all = false;
                    break;
                }
            if (all) prod[static_cast<size_t>(p.lhs)] = true, changed = true;
        }
    }
    if (!prod[0]) {
        grammar g2;
        g2.nonterminals.push_back(g.nonterminals[0]);
        g2.terminals = g.terminals;
        g2.empty_language = true;
        return g2;
    }
    std::vector<bool> reach(n, false);
    reach[0] = true;
    changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (!reach[static_cast<size_t>(p.lhs)]) continue;
            bool usable = true;
            for (const auto& s : p.rhs)
                if (!s.is_term && !prod[static_cast<size_t>(s.id)]) {
                    usable = false;
                    break;
                }
            if (!usable) continue;
            for (const auto& s : p.rhs)
                if (!s.is_term && !reach[static_cast<size_t>(s.id)])
                    reach[static_cast<size_t>(s.id)] = true, changed = true;
        }
    }
    std::vector<std::int32_t> remap(n, -1);
    grammar g2;
    g2.terminals = g.terminals;
    for (size_t i = 0; i < n; ++i)
        if (prod[i] && reach[i]) {
            remap[i] = static_cast<std::int32_t>(g2.nonterminals.size());
            g2.nonterminals.push_back(g.nonterminals[i]);
        }
    for (auto p : g.productions) {
        bool keep = remap[static_cast<size_t>(p.lhs)] >= 0;
        for (const auto& s : p.rhs)
            if (!s.is_term && remap[static_cast<size_t>(s.id)] < 0) keep = false;
        if (!keep) continue;
        p.lhs = remap[static_cast<size_t>(p.lhs)];
        for (auto& s : p.rhs)
            if (!s.is_term) s.id = remap[static_cast<size_t>(s.id)];
        g2.productions.push_back(std::move(p));
    }
    return g2;
}

// ---------------------------------------------------------------------------
// bounded enumeration

// All words derivable from nt with length <= max_len, in length-lex order.
// Works on arbitrary (not necessarily CNF) grammars via a least fixpoint on
// length-indexed word sets; throws budget_error when the stored word count
// exceeds the budget.
inline std::vector<word> enumerate_words(const grammar& g, std::int32_t nt, int max_len,
                                         size_t budget = 200000) {
    if (g.empty_language) return {};
    size_t n = g.nonterminals.size();
    size_t lmax = static_cast<size_t>(max_len);
    // w[A][l] = words of exact length l
    std::vector<std::vector<std::set<word>>> w(n, std::vector<std::set<word>>(lmax + 1));
    size_t total = 0;
    auto insert = [&](size_t a, const word& x) {
        if (w[a][x.size()].insert(x).second) {
            if (++total > budget) throw budget_error("enumerate_words: word budget exceeded");
            return true;
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& p : g.productions) {
            if (p.is_eps()) {
                changed |= insert(static_cast<size_t>(p.lhs), {});
                continue;
            }
            // prefix DP over the right-hand side
            std::vector<std::set<word>> pref(lmax + 1);
            pref[0].insert(word{});
            for (const auto& s : p.rhs) {
                std::vector<std::set<word>> next(lmax + 1);
                for (size_t l1 = 0; l1 <= lmax; ++l1) {
                    if (pref[l1].empty()) continue;
                    if (s.is_term) {
                        if (l1 + 1 > lmax) continue;
                        for (const auto& u : pref[l1]) {
                            word v = u;
                            v.push_back(s.id);
                            next[l1 + 1].insert(std::move(v));
                        }
                    } else {
                        for (size_t l2 = 0; l1 + l2 <= lmax; ++l2) {
                            for (const auto& t : w[static_cast<size_t>(s.id)][l2]) {
                                for (const auto& u : pref[l1]) {
                                    word v = u;
                                    v.insert(v.end(), t.begin(), t.end());
                                    next[l1 + l2].insert(std::move(v));
                                }
                            }
                        }
                    }
                }
                pref = std::move(next);
            }
            for (size_t l = 0; l <= lmax; ++l)
                for (const auto& x : pref[l]) changed |= insert(static_cast<size_t>(p.lhs), x);
        }
    }
    std::vector<word> out;
    for (size_t l = 0; l <= lmax; ++l)
        out.insert(out.end(), w[static_cast<size_t>(nt)][l].begin(),
                   w[static_cast<size_t>(nt)][l].end());
    return out;
}

// All pairs (u, v) with nt => u nt v, uv != eps, |uv| <= max_len, on a pruned
// CNF grammar. Ordered by (|uv|, u, v).
inline std::vector<std::pair<word, word>> pump_pairs(const grammar& g, std::int32_t nt,
                                                     int max_len, size_t budget = 200000) {
    if (g.empty_language) return {};
    size_t n = g.nonterminals.size();
    size_t lmax = static_cast<size_t>(max_len);
    auto words = [&] {
        // length-indexed view of enumerate_words
        std::vector<std::vector<std::vector<word>>> by_len(
            n, std::vector<std::vector<word>>(lmax + 1));
        for (size_t a = 0; a < n; ++a)
            for (auto& x : enumerate_words(g, static_cast<std::int32_t>(a), max_len, budget))
                by_len[a][x.size()].push_back(std::move(x));
        return by_len;
    }();

    // ctx[B][l] = pairs (u, v) with B => u nt v, |uv| = l
    std::vector<std::vector<std::set<std::pair<word, word>>>> ctx(
        n, std::vector<std::set<std::pair<word, word>>>(lmax + 1));
    ctx[static_cast<size_t>(nt)][0].insert({word{}, word{}});
    size_t total = 1;
    for (size_t l = 0; l <= lmax; ++l) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& p : g.productions) {
                if (!p.is_pair()) continue;
                size_t b = static_cast<size_t>(p.rhs[0].id), c = static_cast<size_t>(p.rhs[1].id);
                for (size_t l1 = 0; l1 <= l; ++l1) {
                    size_t l2 = l - l1;
                    for (const auto& [u, v] : ctx[b][l1]) {
                        for (const auto& x : words[c][l2]) {
                            word nv = v;
                            nv.insert(nv.end(), x.begin(), x.end());
                            if (ctx[static_cast<size_t>(p.lhs)][l].insert({u, std::move(nv)}).second) {
                                changed = true;
                                if (++total > budget)
                                    throw budget_error("pump_pairs: pair budget exceeded");
                            }
                        }
                    }
                    for (const auto& [u, v] : ctx[c][l1]) {
                        for (const auto& x : words[b][l2]) {
                            word nu = x;
                            nu.insert(nu.end(), u.begin(), u.end());
                            if (ctx[static_cast<size_t>(p.lhs)][l].insert({std::move(nu), v}).second) {
                                changed = true;
                                if (++total > budget)
                                    throw budget_error("pump_pairs: pair budget exceeded");
                            }
                        }
                    }
                }
            }
        }
    }
    std::vector<std::pair<word, word>> out;
    for (size_t l = 1; l <= lmax; ++l)
        out.insert(out.end(), ctx[static_cast<size_t>(nt)][l].begin(),
                   ctx[static_cast<size_t>(nt)][l].end());
    return out;
}

// Rendering helpers used by reports and error messages.
inline std::string render_word(const word& w, const grammar& g) {
    if (w.empty()) return "\xce\xb5";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += g.terminals[static_cast<size_t>(w[i])];
    }
    return out;
}

} // namespace cfgi
