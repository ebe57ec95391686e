#pragma once

// Report assembly: per-method outcomes, a symmetric agreement matrix, and
// stable-key JSON rendering. Keys holding wall-clock times end in "_ms" so
// deterministic comparisons can strip exactly those.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cfgi/grammar.hpp"
#include "cfgi/group.hpp"
#include "cfgi/semiring.hpp"
#include "cfgi/util.hpp"
#include "cfgi/verdict.hpp"

namespace cfgi {

using ordered_json = nlohmann::ordered_json;

// One method's outcome: a verdict, or withheld when a budget or cap was
// exceeded (never a guessed answer).
struct method_outcome {
    method meth = method::filtered;
    std::optional<verdict> v;
    bool withheld = false;
    std::string error;
    double wall_ms = 0.0;

    bool completed() const { return v.has_value(); }
};

struct stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

inline std::string digest_string(const std::string& bytes) { return hex64(fnv1a64(bytes)); }

inline std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return digest_string(ss.str());
}

inline ordered_json outcome_json(const method_outcome& o, const grammar& g,
                                 const group_backend& b) {
    ordered_json j;
    j["method"] = method_name(o.meth);
    if (o.withheld) {
        j["included"] = nullptr;
        j["withheld"] = true;
        j["error"] = o.error;
        j["wall_ms"] = o.wall_ms;
        return j;
    }
    const verdict& v = *o.v;
    j["included"] = v.included;
    j["withheld"] = false;
    if (v.counterexample)
        j["counterexample"] = render_word(*v.counterexample, g);
    else
        j["counterexample"] = nullptr;
    j["detail"] = v.detail;
    if (v.failing_j >= 0)
        j["failing_j"] = v.failing_j + 1; // vertices reported 1-based, sink last
    else
        j["failing_j"] = nullptr;
    if (v.failing_set)
        j["failing_set"] = render_set(b, *v.failing_set, g.nonterminals);
    else
        j["failing_set"] = nullptr;
    if (o.meth == method::faithful || o.meth == method::filtered) {
        j["union_count"] = v.union_count;
        j["product_count"] = v.product_count;
        j["star_count"] = v.star_count;
        j["max_set_size"] = v.max_set_size;
    }
    j["wall_ms"] = o.wall_ms;
    return j;
}

// Symmetric matrix over the given outcomes: true/false where both methods
// completed, null where either was withheld.
inline ordered_json agreement_json(const std::vector<method_outcome>& outcomes) {
    ordered_json mat = ordered_json::array();
    for (const auto& a : outcomes) {
        ordered_json row = ordered_json::array();
        for (const auto& b : outcomes) {
            if (!a.completed() || !b.completed())
                row.push_back(nullptr);
            else
                row.push_back(a.v->included == b.v->included);
        }
        mat.push_back(std::move(row));
    }
    ordered_json j;
    ordered_json names = ordered_json::array();
    for (const auto& o : outcomes) names.push_back(method_name(o.meth));
    j["methods"] = std::move(names);
    j["matrix"] = std::move(mat);
    ordered_json disagreements = ordered_json::array();
    for (size_t i = 0; i < outcomes.size(); ++i)
        for (size_t k = i + 1; k < outcomes.size(); ++k)
            if (outcomes[i].completed() && outcomes[k].completed() &&
                outcomes[i].v->included != outcomes[k].v->included) {
                ordered_json d;
                d["first"] = method_name(outcomes[i].meth);
                d["second"] = method_name(outcomes[k].meth);
                disagreements.push_back(std::move(d));
            }
    j["disagreements"] = std::move(disagreements);
    return j;
}

inline bool any_disagreement(const std::vector<method_outcome>& outcomes) {
    for (size_t i = 0; i < outcomes.size(); ++i)
        for (size_t k = i + 1; k < outcomes.size(); ++k)
            if (outcomes[i].completed() && outcomes[k].completed() &&
                outcomes[i].v->included != outcomes[k].v->included)
                return true;
    return false;
}

inline ordered_json run_report_json(const std::string& grammar_path,
                                    const std::string& grammar_digest,
                                    const std::string& group_path,
                                    const std::string& group_digest, const grammar& g,
                                    const group_backend& b,
                                    const std::vector<method_outcome>& outcomes,
                                    int exit_code, double total_ms) {
    ordered_json j;
    j["grammar"] = ordered_json{{"path", grammar_path},
                                {"digest", grammar_digest},
                                {"nonterminals", g.nt_count()},
                                {"terminals", g.terminals.size()},
                                {"productions", g.productions.size()},
                                {"empty_language", g.empty_language}};
    j["group"] = ordered_json{{"path", group_path}, {"digest", group_digest},
                              {"description", b.describe()}};
    ordered_json ms = ordered_json::array();
    for (const auto& o : outcomes) ms.push_back(outcome_json(o, g, b));
    j["methods"] = std::move(ms);
    j["agreement"] = agreement_json(outcomes);
    j["exit_code"] = exit_code;
    j["total_ms"] = total_ms;
    return j;
}

// Drops every key ending in "_ms", recursively. Used to compare reports for
// determinism.
inline void strip_timing(ordered_json& j) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end();) {
            if (it.key().size() >= 3 && it.key().substr(it.key().size() - 3) == "_ms")
                it = j.erase(it);
            else
                strip_timing(it.value()), ++it;
        }
    } else if (j.is_array()) {
        for (auto& e : j) strip_timing(e);
    }
}

inline void print_summary(std::ostream& os, const grammar& g, const group_backend& b,
                          const std::vector<method_outcome>& outcomes) {
    os << "inclusion check: " << g.nt_count() << " nonterminals, " << g.productions.size()
       << " productions, group " << b.describe() << "\n";
    for (const auto& o : outcomes) {
        os << "  " << method_name(o.meth) << ": ";
        if (o.withheld) {
            os << "withheld (" << o.error << ")";
        } else {
            os << (o.v->included ? "included" : "not included");
            if (o.v->counterexample)
                os << ", counterexample " << render_word(*o.v->counterexample, g);
            if (!o.v->detail.empty()) os << " (" << o.v->detail << ")";
        }
        os << "\n";
    }
    if (any_disagreement(outcomes)) os << "  METHODS DISAGREE\n";
}

} // namespace cfgi
