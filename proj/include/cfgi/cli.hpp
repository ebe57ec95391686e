#pragma once

// Command-line front end. Exit codes:
//   0  all requested methods agree on inclusion
//   1  all requested methods agree on non-inclusion
//   2  methods disagree (a report is always emitted in this case)
//   3  usage or input parse error
//   4  a budget or cap was exceeded; verdicts withheld rather than guessed

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cfgi/diagram.hpp"
#include "cfgi/differential.hpp"
#include "cfgi/errors.hpp"
#include "cfgi/grammar.hpp"
#include "cfgi/group.hpp"
#include "cfgi/oracle.hpp"
#include "cfgi/report.hpp"

namespace cfgi {

inline bool log_enabled() {
    const char* v = std::getenv("CFGI_LOG");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace detail

// In-process entry point; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"context-free language inclusion in the identity language of a group"};
    app.name("decide");
    app.fallthrough(); // subcommand args may use the top-level flags

    std::string grammar_path, group_path;
    std::string methods_csv;
    std::string mode = "filtered";
    std::uint64_t max_set_size = default_label_cap;
    int max_word_len = 8;
    int pumping_p = 0, pumping_q = 0;
    std::string emit_dot_path, report_path;
    std::uint64_t seed = 1;

    app.add_option("--grammar", grammar_path, "grammar file");
    app.add_option("--group", group_path, "group and morphism file");
    app.add_option("--methods", methods_csv,
                   "comma-separated: faithful, filtered, witness, anisimov, enumeration");
    app.add_option("--mode", mode, "closure mode used when --methods is omitted")
        ->check(CLI::IsMember({"faithful", "filtered"}));
    app.add_option("--max-set-size", max_set_size, "label-set cap before withholding");
    app.add_option("--max-word-len", max_word_len,
                   "length bound for counterexample search and enumeration");
    app.add_option("--pumping-p", pumping_p, "short-word bound (default 2^n)");
    app.add_option("--pumping-q", pumping_q, "pumped-context bound (default 2^n)");
    app.add_option("--emit-dot", emit_dot_path, "write the transition diagram in DOT form");
    app.add_option("--report", report_path, "write the JSON report to this path");
    app.add_option("--seed", seed, "seed for randomized subcommands");

    auto* diff = app.add_subcommand("differential", "run seeded random cross-method instances");
    std::uint64_t diff_count = 25;
    diff->add_option("--count", diff_count, "number of instances");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 3;
    }

    bool logging = log_enabled();

    if (*diff) {
        diff_bounds bounds;
        bounds.enum_word_len = max_word_len;
        bounds.label_cap = static_cast<size_t>(max_set_size);
        bounds.pumping_p = pumping_p;
        bounds.pumping_q = pumping_q;
        if (logging)
            err << "[log] differential: count=" << diff_count << " seed=" << seed << "\n";
        auto res = differential_run(static_cast<size_t>(diff_count), seed, bounds);
        out << "differential: " << res.rows.size() << " instances, " << res.disagree_rows
            << " with disagreement, " << res.withheld_rows << " with withheld verdicts\n";
        if (!report_path.empty()) {
            std::ofstream rf(report_path);
            rf << res.report.dump(2) << "\n";
        } else {
            out << res.report.dump(2) << "\n";
        }
        return res.exit_code;
    }

    if (grammar_path.empty() || group_path.empty()) {
        err << "usage error: --grammar and --group are required\n";
        return 3;
    }

    try {
        std::string grammar_text = detail::slurp(grammar_path);
        std::string group_text = detail::slurp(group_path);
        grammar g0 = parse_grammar(grammar_text);
        auto [backend, mor] = parse_group_spec(group_text);
        if (logging)
            err << "[log] parsed: " << g0.nt_count() << " nonterminals, "
                << g0.productions.size() << " productions; group " << backend.describe() << "\n";
        grammar g1 = to_cnf(g0);
        grammar g = prune_useless(g1);
        if (logging)
            err << "[log] normal form: " << g.nt_count() << " nonterminals, "
                << g.productions.size() << " productions"
                << (g.empty_language ? " (empty language)" : "") << "\n";
        bound_morphism m = bind_morphism(mor, g.terminals, backend);

        if (!emit_dot_path.empty()) {
            diagram d = build_diagram(g, m, backend);
            std::ofstream df(emit_dot_path);
            df << to_dot(d, backend);
            if (logging) err << "[log] wrote DOT to " << emit_dot_path << "\n";
        }

        std::vector<method> methods;
        if (methods_csv.empty()) {
            methods = {mode == "faithful" ? method::faithful : method::filtered, method::witness};
        } else {
            for (const auto& name : split(methods_csv, ',')) {
                auto meth = method_from_name(trim(name));
                if (!meth) {
                    err << "usage error: unknown method '" << trim(name) << "'\n";
                    return 3;
                }
                methods.push_back(*meth);
            }
        }

        diff_bounds bounds;
        bounds.enum_word_len = max_word_len;
        bounds.label_cap = static_cast<size_t>(max_set_size);
        bounds.pumping_p = pumping_p;
        bounds.pumping_q = pumping_q;
        diff_instance inst{g, backend, m};

        stopwatch total;
        std::vector<method_outcome> outcomes;
        for (method meth : methods) {
            auto o = run_method_guarded(meth, inst, bounds);
            if (logging)
                err << "[log] " << method_name(meth) << ": "
                    << (o.withheld ? "withheld" : (o.v->included ? "included" : "not included"))
                    << " in " << o.wall_ms << " ms\n";
            outcomes.push_back(std::move(o));
        }

        bool any_withheld = false;
        for (const auto& o : outcomes) any_withheld |= o.withheld;
        int exit_code;
        if (any_withheld)
            exit_code = 4;
        else if (any_disagreement(outcomes))
            exit_code = 2;
        else
            exit_code = outcomes.front().v->included ? 0 : 1;

        print_summary(out, g, backend, outcomes);
        ordered_json report =
            run_report_json(grammar_path, digest_string(grammar_text), group_path,
                            digest_string(group_text), g, backend, outcomes, exit_code,
                            total.ms());
        if (!report_path.empty()) {
            std::ofstream rf(report_path);
            rf << report.dump(2) << "\n";
        } else if (exit_code == 2) {
            out << report.dump(2) << "\n";
        }
        return exit_code;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace cfgi
