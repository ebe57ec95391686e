#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "support/test_support.hpp"

using namespace cfgi;

static grammar ex1() { return parse_grammar(ts::slurp_file(ts::sample_path("ex1.cfg"))); }

TEST_CASE("parsing the balanced-count sample") {
    grammar g = ex1();
    CHECK(g.nonterminals == std::vector<std::string>{"S", "C", "D", "A", "B"});
    CHECK(g.terminals == std::vector<std::string>{"a", "b"});
    CHECK(g.productions.size() == 9);
    CHECK(is_cnf(g));
}

TEST_CASE("parsing a minimal grammar") {
    grammar g = parse_grammar("start: S\nS -> 'a'\n");
    CHECK(g.nonterminals.size() == 1);
    CHECK(g.productions.size() == 1);
    CHECK(g.productions[0].is_term());
}

TEST_CASE("parse errors carry context") {
    CHECK_THROWS_AS(parse_grammar("start: S\nS ->\n"), parse_error);
    CHECK_THROWS_AS(parse_grammar("S -> 'a'\n"), parse_error);              // no start line
    CHECK_THROWS_AS(parse_grammar("start: S\nstart: S\nS -> 'a'\n"), parse_error);
    CHECK_THROWS_AS(parse_grammar("start: S\nS -> A\n"), parse_error);      // undeclared symbol
    CHECK_THROWS_AS(parse_grammar("start: S\nS -> eps 'a'\n"), parse_error);
    CHECK_THROWS_AS(parse_grammar("start: S\nA -> 'a'\n"), parse_error);    // start unproduced
}

TEST_CASE("nonterminal order is start first, then declaration order") {
    grammar g = parse_grammar("start: S\nB -> 'b'\nS -> B A\nA -> 'a'\n");
    CHECK(g.nonterminals == std::vector<std::string>{"S", "B", "A"});
    CHECK(g.terminals == std::vector<std::string>{"b", "a"});
}

TEST_CASE("duplicate productions collapse to the first occurrence") {
    grammar g = parse_grammar("start: S\nS -> 'a'\nS -> 'a'\n");
    CHECK(g.productions.size() == 1);
}

TEST_CASE("eps productions parse only as the whole right side") {
    grammar g = parse_grammar("start: S\nS -> eps\nS -> 'a'\n");
    CHECK(g.productions[0].is_eps());
    CHECK(is_cnf(g));
}

TEST_CASE("normal form wraps terminals in fresh nonterminals") {
    grammar g = to_cnf(parse_grammar("start: S\nS -> 'a' 'b'\n"));
    CHECK(is_cnf(g));
    CHECK(g.nonterminals == std::vector<std::string>{"S", "T_a", "T_b"});
    REQUIRE(g.productions.size() == 3);
    CHECK(g.productions[0].is_pair());
    auto words = enumerate_words(g, 0, 8);
    REQUIRE(words.size() == 1);
    CHECK(render_word(words[0], g) == "a b");
}

TEST_CASE("normal form is a fixed point on normal-form input") {
    grammar g = prune_useless(ex1());
    grammar h = to_cnf(g);
    CHECK(h == g);
}

TEST_CASE("unit chains are eliminated") {
    grammar g = to_cnf(parse_grammar("start: S\nS -> A\nA -> 'a'\n"));
    CHECK(is_cnf(g));
    REQUIRE(g.productions.size() == 1);
    CHECK(g.productions[0].is_term());
    CHECK(g.nonterminals == std::vector<std::string>{"S"});
}

TEST_CASE("empty word is preserved through a fresh start symbol") {
    grammar g0 = parse_grammar("start: S\nS -> eps\nS -> A S\nA -> 'a'\n");
    grammar g = to_cnf(g0);
    CHECK(is_cnf(g));
    auto before = enumerate_words(g0, 0, 5);
    auto after = enumerate_words(g, 0, 5);
    CHECK(before == after);
    CHECK(!before.empty());
    CHECK(before.front().empty()); // eps in the language
}

TEST_CASE("pruning removes nonproductive symbols") {
    grammar g = prune_useless(to_cnf(parse_grammar("start: S\nS -> 'a'\nU -> U U\n")));
    CHECK(g.nonterminals == std::vector<std::string>{"S"});
    CHECK_FALSE(g.empty_language);
}

TEST_CASE("pruning leaves the balanced-count sample unchanged") {
    grammar g = ex1();
    CHECK(prune_useless(g) == g);
}

TEST_CASE("unproductive start flags the empty language") {
    grammar g = prune_useless(to_cnf(parse_grammar("start: S\nS -> S S\n")));
    CHECK(g.empty_language);
    CHECK(g.productions.empty());
    CHECK(enumerate_words(g, 0, 5).empty());
}

TEST_CASE("word enumeration on the balanced-count sample") {
    grammar g = prune_useless(ex1());
    auto w4 = enumerate_words(g, 0, 4);
    CHECK(w4.size() == 8); // 2 of length 2, 6 of length 4
    for (const auto& w : w4) {
        CHECK(w.size() % 2 == 0);
        CHECK(std::count(w.begin(), w.end(), 0) == std::count(w.begin(), w.end(), 1));
    }
    CHECK(enumerate_words(g, 0, 1).empty());
    grammar tiny = parse_grammar("start: S\nS -> 'a'\n");
    auto wt = enumerate_words(tiny, 0, 3);
    REQUIRE(wt.size() == 1);
    CHECK(wt[0] == word{0});
}

TEST_CASE("word enumeration is length-lexicographic and budgeted") {
    grammar g = prune_useless(to_cnf(parse_grammar("start: S\nS -> S S\nS -> 'a'\nS -> 'b'\n")));
    auto ws = enumerate_words(g, 0, 3);
    REQUIRE(ws.size() == 2 + 4 + 8);
    for (size_t i = 1; i < ws.size(); ++i) CHECK(word_less(ws[i - 1], ws[i]));
    CHECK_THROWS_AS(enumerate_words(g, 0, 18, 1000), budget_error);
}

TEST_CASE("pump pairs on an acyclic grammar are empty") {
    grammar g = prune_useless(parse_grammar(ts::slurp_file(ts::sample_path("sab.cfg"))));
    CHECK(pump_pairs(g, 0, 4).empty());
}

TEST_CASE("pump pairs cover the two-sided sample cases") {
    grammar g = prune_useless(ex1());
    auto pairs = pump_pairs(g, 0, 2);
    word ab{0, 1};
    bool found = false;
    for (const auto& [u, v] : pairs) found |= (u.empty() && v == ab);
    CHECK(found);

    grammar h = prune_useless(parse_grammar(ts::slurp_file(ts::sample_path("asb.cfg"))));
    auto hp = pump_pairs(h, 0, 2);
    bool left = false;
    for (const auto& [u, v] : hp) left |= (render_word(u, h) == "a" && v.empty());
    CHECK(left);
}

TEST_CASE("pump pairs are ordered and within the length bound") {
    grammar g = prune_useless(ex1());
    auto pairs = pump_pairs(g, 0, 3);
    for (const auto& [u, v] : pairs) {
        CHECK(u.size() + v.size() >= 1);
        CHECK(u.size() + v.size() <= 3);
    }
    for (size_t i = 1; i < pairs.size(); ++i) {
        auto la = pairs[i - 1].first.size() + pairs[i - 1].second.size();
        auto lb = pairs[i].first.size() + pairs[i].second.size();
        CHECK(la <= lb);
    }
}

namespace {

grammar random_general_grammar(rng& r) {
    grammar g;
    int n = 1 + static_cast<int>(r.below(3));
    const char* names[] = {"S", "A", "B"};
    const char* terms[] = {"a", "b"};
    for (int i = 0; i < n; ++i) g.nonterminals.push_back(names[i]);
    int nterm = 1 + static_cast<int>(r.below(2));
    for (int t = 0; t < nterm; ++t) g.terminals.push_back(terms[t]);
    for (int a = 0; a < n; ++a) {
        int count = 1 + static_cast<int>(r.below(2));
        for (int c = 0; c < count; ++c) {
            production p;
            p.lhs = a;
            size_t len = r.below(4); // 0 = eps
            for (size_t i = 0; i < len; ++i) {
                if (r.chance(0.45))
                    p.rhs.push_back({true, static_cast<std::int32_t>(r.below(nterm))});
                else
                    p.rhs.push_back({false, static_cast<std::int32_t>(r.below(n))});
            }
            g.productions.push_back(std::move(p));
        }
    }
    return g;
}

} // namespace

TEST_CASE("normal form preserves the generated language") {
    rng r(31);
    for (int it = 0; it < 50; ++it) {
        grammar g0 = random_general_grammar(r);
        grammar g1 = to_cnf(g0);
        CHECK(is_cnf(g1));
        CHECK(enumerate_words(g0, 0, 6) == enumerate_words(g1, 0, 6));
    }
}

TEST_CASE("pruning is idempotent and language-preserving") {
    rng r(32);
    for (int it = 0; it < 50; ++it) {
        grammar g1 = to_cnf(random_general_grammar(r));
        grammar g2 = prune_useless(g1);
        CHECK(prune_useless(g2) == g2);
        CHECK(enumerate_words(g1, 0, 6) == enumerate_words(g2, 0, 6));
    }
}

TEST_CASE("pump pairs embed every witness word derivably") {
    rng r(33);
    int checked = 0;
    for (int it = 0; it < 60; ++it) {
        grammar g = prune_useless(to_cnf(random_general_grammar(r)));
        if (g.empty_language) continue;
        for (size_t a = 0; a < g.nonterminals.size(); ++a) {
            auto pairs = pump_pairs(g, static_cast<std::int32_t>(a), 3);
            auto ws = enumerate_words(g, static_cast<std::int32_t>(a), 3);
            for (const auto& [u, v] : pairs) {
                for (const auto& w : ws) {
                    word uwv = u;
                    uwv.insert(uwv.end(), w.begin(), w.end());
                    uwv.insert(uwv.end(), v.begin(), v.end());
                    auto longer =
                        enumerate_words(g, static_cast<std::int32_t>(a),
                                        static_cast<int>(uwv.size()));
                    CHECK(std::find(longer.begin(), longer.end(), uwv) != longer.end());
                    ++checked;
                }
            }
        }
    }
    CHECK(checked > 50);
}
