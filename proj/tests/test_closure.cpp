#include <catch2/catch_amalgamated.hpp>

#include "support/test_support.hpp"

using namespace cfgi;

namespace {

bool subset_of(const label_set& a, const label_set& b) {
    for (const auto& u : a.items())
        if (!b.contains(u)) return false;
    return true;
}

} // namespace

TEST_CASE("closure of a one-cell empty matrix") {
    group_backend b = group_backend::make_free(1);
    label_matrix m0(1, std::vector<label_set>(1));
    closure_result cr = kleene_closure(m0, b);
    CHECK(cr.m[0][0].empty());
    CHECK(cr.union_count == 1);
    CHECK(cr.product_count == 1);
    CHECK(cr.star_count == 0);
}

TEST_CASE("closure start-to-sink entry of the sequence grammar") {
    auto p = ts::load_pipeline("sab.cfg", "z.grp");
    diagram d = build_diagram(p.g, p.m, p.b);
    closure_result cr = kleene_closure(initial_matrix(d), p.b);
    const label_set& sz = cr.m[0][static_cast<size_t>(d.sink())];
    // simple walk S->A->Z carries <x1, B>; the full walk through B cancels to 1
    CHECK(sz.contains({p.b.canon({1}), {3}}));
    CHECK(sz.contains(u_one(p.b)));
    CHECK(sz.size() == 2);
}

TEST_CASE("levels snapshot the input and grow monotonically") {
    auto p = ts::load_pipeline("ex1.cfg", "z.grp");
    diagram d = build_diagram(p.g, p.m, p.b);
    label_matrix m0 = initial_matrix(d);
    closure_result cr = kleene_closure(m0, p.b);
    size_t n1 = m0.size();
    REQUIRE(cr.levels.size() == n1 + 1);
    CHECK(cr.levels.front() == m0);
    CHECK(cr.levels.back() == cr.m);
    for (size_t k = 1; k <= n1; ++k)
        for (size_t i = 0; i < n1; ++i)
            for (size_t j = 0; j < n1; ++j)
                CHECK(subset_of(cr.levels[k - 1][i][j], cr.levels[k][i][j]));
}

TEST_CASE("closure runs exactly the cubic number of set operations") {
    rng r(61);
    diff_bounds bounds;
    bounds.max_nonterminals = 3;
    for (int it = 0; it < 20; ++it) {
        diff_instance inst = detail::gen_instance(r, bounds);
        diagram d = build_diagram(inst.g, inst.m, inst.backend);
        size_t n1 = static_cast<size_t>(d.vertex_count());
        closure_result cr = kleene_closure(initial_matrix(d), inst.backend);
        CHECK(cr.union_count == n1 * n1 * n1);
        CHECK(cr.product_count == n1 * n1 * n1);
        CHECK(cr.star_count == 0);
    }
}

TEST_CASE("filtered mode accepts the balanced-count sample") {
    auto p = ts::load_pipeline("ex1.cfg", "z.grp");
    verdict v = decide(p.g, p.b, p.m, closure_mode::filtered);
    CHECK(v.included);
    CHECK(!v.counterexample.has_value());
    CHECK(v.star_count > 0);
}

TEST_CASE("faithful mode rejects the balanced-count sample before any conjugation") {
    auto p = ts::load_pipeline("ex1.cfg", "z.grp");
    verdict v = decide(p.g, p.b, p.m, closure_mode::faithful);
    CHECK_FALSE(v.included);
    CHECK(v.failing_j == -1); // start-to-sink check, not the j-sweep
    CHECK(v.star_count == 0); // halted before any star
    CHECK(!v.counterexample.has_value()); // inclusion actually holds
}

TEST_CASE("both modes reject when both terminals map to the same generator") {
    auto p = ts::load_pipeline("sab.cfg", "same-gen.grp");
    for (closure_mode mode : {closure_mode::faithful, closure_mode::filtered}) {
        verdict v = decide(p.g, p.b, p.m, mode);
        CHECK_FALSE(v.included);
        REQUIRE(v.counterexample.has_value());
        CHECK(*v.counterexample == word{0, 1});
    }
}

TEST_CASE("the canonical mode discrepancy on the sequence grammar") {
    auto p = ts::load_pipeline("sab.cfg", "z.grp");
    verdict f = decide(p.g, p.b, p.m, closure_mode::faithful);
    verdict l = decide(p.g, p.b, p.m, closure_mode::filtered);
    CHECK_FALSE(f.included);
    CHECK(f.failing_j == -1);
    REQUIRE(f.failing_set.has_value());
    CHECK(f.failing_set->contains({p.b.canon({1}), {3}})); // the unbalanced <x1, B>
    CHECK(l.included);
}

TEST_CASE("empty language is accepted without running the closure") {
    auto p = ts::make_pipeline("start: S\nS -> S S\n", "kind: free\nrank: 1\n");
    REQUIRE(p.g.empty_language);
    for (closure_mode mode : {closure_mode::faithful, closure_mode::filtered}) {
        verdict v = decide(p.g, p.b, p.m, mode);
        CHECK(v.included);
        CHECK(v.union_count == 0);
        CHECK(v.product_count == 0);
    }
}

TEST_CASE("level-zero walk families are single arcs") {
    auto p = ts::load_pipeline("sab.cfg", "z.grp");
    diagram d = build_diagram(p.g, p.m, p.b);
    auto sa = enumerate_walks(d, 0, 1, 0);
    REQUIRE(sa.size() == 1);
    REQUIRE(sa[0].size() == 1);
    CHECK(d.arcs[static_cast<size_t>(sa[0][0])].from == 0);
    CHECK(d.arcs[static_cast<size_t>(sa[0][0])].to == 1);
    CHECK(enumerate_walks(d, 0, 0, 0).empty()); // no loops in this diagram
    CHECK(enumerate_walks(d, 0, d.sink(), 0).empty());
}

TEST_CASE("walks spell their terminal letters in traversal order") {
    auto p = ts::load_pipeline("sab.cfg", "z.grp");
    diagram d = build_diagram(p.g, p.m, p.b);
    auto ws = enumerate_walks(d, 0, d.sink(), d.vertex_count());
    bool saw_full = false;
    for (const auto& w : ws) {
        if (w.size() == 4) {
            CHECK(walk_word(d, w) == word{0, 1});
            CHECK(walk_label(d, w, p.b) == u_one(p.b));
            saw_full = true;
        }
    }
    CHECK(saw_full);
}

TEST_CASE("walk families carry the same labels as closure entries") {
    rng r(62);
    diff_bounds bounds;
    bounds.max_nonterminals = 3;
    int covered = 0;
    for (int it = 0; it < 60; ++it) {
        diff_instance inst = detail::gen_instance(r, bounds);
        if (inst.g.empty_language) continue;
        diagram d = build_diagram(inst.g, inst.m, inst.backend);
        size_t n1 = static_cast<size_t>(d.vertex_count());
        family_table table;
        try {
            table = build_walk_families(d, static_cast<int>(n1));
        } catch (const budget_error&) {
            continue; // family too large to enumerate; equivalence checked elsewhere
        }
        closure_result cr = kleene_closure(initial_matrix(d), inst.backend);
        for (size_t k = 0; k <= n1; ++k)
            for (size_t i = 0; i < n1; ++i)
                for (size_t j = 0; j < n1; ++j)
                    CHECK(walk_labels(d, table[k][i][j], inst.backend) == cr.levels[k][i][j]);
        ++covered;
    }
    CHECK(covered >= 30);
}

TEST_CASE("walks at level k never exceed the doubling length bound") {
    rng r(63);
    diff_bounds bounds;
    bounds.max_nonterminals = 3;
    for (int it = 0; it < 30; ++it) {
        diff_instance inst = detail::gen_instance(r, bounds);
        diagram d = build_diagram(inst.g, inst.m, inst.backend);
        size_t n1 = static_cast<size_t>(d.vertex_count());
        family_table table;
        try {
            table = build_walk_families(d, static_cast<int>(n1));
        } catch (const budget_error&) {
            continue;
        }
        for (size_t k = 0; k < table.size(); ++k) {
            size_t limit = size_t{1} << k;
            for (const auto& row : table[k])
                for (const auto& fam : row)
                    for (const auto& w : fam) CHECK(w.size() <= limit);
        }
    }
}

TEST_CASE("faithful acceptance implies filtered acceptance") {
    rng r(64);
    diff_bounds bounds;
    bounds.max_nonterminals = 4;
    int accepted = 0;
    for (int it = 0; it < 150; ++it) {
        diff_instance inst = detail::gen_instance(r, bounds);
        verdict f = decide(inst.g, inst.backend, inst.m, closure_mode::faithful);
        if (!f.included) continue;
        verdict l = decide(inst.g, inst.backend, inst.m, closure_mode::filtered);
        CHECK(l.included);
        ++accepted;
    }
    CHECK(accepted > 10);
}

TEST_CASE("cap violations report the offending matrix entry") {
    auto p = ts::load_pipeline("ex1.cfg", "z.grp");
    diagram d = build_diagram(p.g, p.m, p.b);
    try {
        kleene_closure(initial_matrix(d), p.b, 5);
        FAIL("expected budget_error");
    } catch (const budget_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("level") != std::string::npos);
        CHECK(msg.find("cap 5") != std::string::npos);
    }
    CHECK_THROWS_AS(decide(p.g, p.b, p.m, closure_mode::filtered, 5), budget_error);
}
