#pragma once

// Group backends over a paired generator alphabet x1..xm and formal inverses
// x1'..xm'. Every backend guarantees x_k x_k' = x_k' x_k = identity and a
// unique canonical form per element, which is what makes label-set
// deduplication and identity tests exact.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cfgi/errors.hpp"
#include "cfgi/util.hpp"

namespace cfgi {

// Generator-word letter encoding: +k is x_k, -k is x_k', k >= 1.
using gword = std::vector<std::int32_t>;

enum class group_kind { free_group, free_abelian, permutation };

// Canonical form, one flat vector per kind:
//   free_group:   freely reduced letter sequence (+k / -k)
//   free_abelian: exponent vector of length rank
//   permutation:  0-based image table of length degree
struct group_elem {
    std::vector<std::int64_t> v;
    auto operator<=>(const group_elem&) const = default;
};

class group_backend {
  public:
    static group_backend make_free(int rank) {
        group_backend b;
        b.kind_ = group_kind::free_group;
        b.rank_ = rank;
        return b;
    }
    static group_backend make_abelian(int rank) {
        group_backend b;
        b.kind_ = group_kind::free_abelian;
        b.rank_ = rank;
        return b;
    }
    // gens[k] is the 0-based image table of generator x_{k+1}.
    static group_backend make_permutation(int degree, std::vector<std::vector<std::int64_t>> gens) {
        group_backend b;
        b.kind_ = group_kind::permutation;
        b.rank_ = static_cast<int>(gens.size());
        b.degree_ = degree;
        b.gens_ = std::move(gens);
        return b;
    }

    group_kind kind() const { return kind_; }
    int rank() const { return rank_; }
    int degree() const { return degree_; }

    std::string describe() const {
        switch (kind_) {
        case group_kind::free_group:
            return "free group of rank " + std::to_string(rank_);
        case group_kind::free_abelian:
            return "free abelian group of rank " + std::to_string(rank_);
        case group_kind::permutation:
            return "permutation group on " + std::to_string(degree_) + " points with " +
                   std::to_string(rank_) + " generators";
        }
        return {};
    }

    group_elem identity() const {
        group_elem e;
        switch (kind_) {
        case group_kind::free_group: break;
        case group_kind::free_abelian:
            e.v.assign(static_cast<size_t>(rank_), 0);
            break;
        case group_kind::permutation:
            e.v.resize(static_cast<size_t>(degree_));
            std::iota(e.v.begin(), e.v.end(), 0);
            break;
        }
        return e;
    }

    bool is_identity(const group_elem& g) const { return g == identity(); }

    group_elem canon(const gword& w) const {
        switch (kind_) {
        case group_kind::free_group: {
            group_elem g;
            for (std::int32_t c : w) {
                if (!g.v.empty() && g.v.back() == -c)
                    g.v.pop_back();
                else
                    g.v.push_back(c);
            }
            return g;
        }
        case group_kind::free_abelian: {
            group_elem g = identity();
            for (std::int32_t c : w) {
                size_t k = static_cast<size_t>((c > 0 ? c : -c) - 1);
                g.v[k] += c > 0 ? 1 : -1;
            }
            return g;
        }
        case group_kind::permutation: {
            group_elem g = identity();
            for (std::int32_t c : w) g = mul(g, gen_elem(c));
            return g;
        }
        }
        return {};
    }

    group_elem mul(const group_elem& a, const group_elem& b) const {
        switch (kind_) {
        case group_kind::free_group: {
            // cancellation happens only at the seam
            group_elem g = a;
            for (std::int64_t c : b.v) {
                if (!g.v.empty() && g.v.back() == -c)
                    g.v.pop_back();
                else
                    g.v.push_back(c);
            }
            return g;
        }
        case group_kind::free_abelian: {
            group_elem g = a;
            for (size_t i = 0; i < g.v.size(); ++i) g.v[i] += b.v[i];
            return g;
        }
        case group_kind::permutation: {
            // (a then b): point p goes to b[a[p]]
            group_elem g;
            g.v.resize(a.v.size());
            for (size_t i = 0; i < a.v.size(); ++i)
                g.v[i] = b.v[static_cast<size_t>(a.v[i])];
            return g;
        }
        }
        return {};
    }

    group_elem inv(const group_elem& a) const {
        switch (kind_) {
        case group_kind::free_group: {
            group_elem g;
            g.v.reserve(a.v.size());
            for (auto it = a.v.rbegin(); it != a.v.rend(); ++it) g.v.push_back(-*it);
            return g;
        }
        case group_kind::free_abelian: {
            group_elem g = a;
            for (auto& x : g.v) x = -x;
            return g;
        }
        case group_kind::permutation: {
            group_elem g;
            g.v.resize(a.v.size());
            for (size_t i = 0; i < a.v.size(); ++i)
                g.v[static_cast<size_t>(a.v[i])] = static_cast<std::int64_t>(i);
            return g;
        }
        }
        return {};
    }

    std::string render(const group_elem& g) const {
        switch (kind_) {
        case group_kind::free_group: {
            if (g.v.empty()) return "\xce\xb5";
            std::string out;
            for (std::int64_t c : g.v) {
                out += "x" + std::to_string(c > 0 ? c : -c);
                if (c < 0) out += "'";
            }
            return out;
        }
        case group_kind::free_abelian: {
            std::string out;
            for (size_t i = 0; i < g.v.size(); ++i) {
                std::int64_t e = g.v[i];
                if (e == 0) continue;
                out += "x" + std::to_string(i + 1);
                if (e == -1)
                    out += "'";
                else if (e != 1)
                    out += "^" + std::to_string(e);
            }
            return out.empty() ? "\xce\xb5" : out;
        }
        case group_kind::permutation: {
            // disjoint cycle notation over 1-based points
            std::string out;
            std::vector<bool> seen(g.v.size(), false);
            for (size_t i = 0; i < g.v.size(); ++i) {
                if (seen[i] || g.v[i] == static_cast<std::int64_t>(i)) continue;
                out += "(";
                size_t j = i;
                bool first = true;
                while (!seen[j]) {
                    seen[j] = true;
                    if (!first) out += " ";
                    out += std::to_string(j + 1);
                    first = false;
                    j = static_cast<size_t>(g.v[j]);
                }
                out += ")";
            }
            return out.empty() ? "\xce\xb5" : out;
        }
        }
        return {};
    }

    // Rendered free word back to letters; used by canon-idempotence tests.
    static gword parse_letters(const std::string& text) {
        gword out;
        size_t i = 0;
        auto fail = [&] { throw parse_error("malformed generator word: '" + text + "'"); };
        while (i < text.size()) {
            if (text[i] == ' ' || text[i] == '\t') {
                ++i;
                continue;
            }
            if (text[i] != 'x') fail();
            ++i;
            size_t start = i;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
            if (start == i) fail();
            int k = std::stoi(text.substr(start, i - start));
            if (k < 1) fail();
            bool primed = i < text.size() && text[i] == '\'';
            if (primed) ++i;
            out.push_back(primed ? -k : k);
        }
        return out;
    }

  private:
    group_elem gen_elem(std::int32_t c) const {
        size_t k = static_cast<size_t>((c > 0 ? c : -c) - 1);
        group_elem g;
        g.v = gens_[k];
        return c > 0 ? g : inv(g);
    }

    group_kind kind_ = group_kind::free_group;
    int rank_ = 0;
    int degree_ = 0;
    std::vector<std::vector<std::int64_t>> gens_;
};

// Terminal name -> generator word, as written in the group spec file.
// Renders a raw (not necessarily reduced) generator word.
inline std::string render_gword(const gword& w) {
    if (w.empty()) return "\xce\xb5";
    std::string out;
    for (std::int32_t c : w) {
        out += "x" + std::to_string(c > 0 ? c : -c);
        if (c < 0) out += "'";
    }
    return out;
}

struct morphism {
    std::map<std::string, gword> entries;
};

// Morphism bound to a grammar's terminal order: one generator word per
// terminal index.
using bound_morphism = std::vector<gword>;

// Terminals literally named like generator letters default to themselves;
// anything else without an explicit map entry is an error at decide time.
inline bound_morphism bind_morphism(const morphism& m, const std::vector<std::string>& terminals,
                                    const group_backend& b) {
    bound_morphism out;
    out.reserve(terminals.size());
    for (const auto& t : terminals) {
        auto it = m.entries.find(t);
        if (it != m.entries.end()) {
            for (std::int32_t c : it->second)
                if ((c > 0 ? c : -c) > b.rank())
                    throw parse_error("morphism image of '" + t + "' uses a generator out of range");
            out.push_back(it->second);
            continue;
        }
        // identity-mapping fallback for terminals named x<k> / x<k>'
        bool ok = false;
        if (t.size() >= 2 && t[0] == 'x') {
            size_t dig_end = 1;
            while (dig_end < t.size() && t[dig_end] >= '0' && t[dig_end] <= '9') ++dig_end;
            if (dig_end > 1 && (dig_end == t.size() || (dig_end + 1 == t.size() && t[dig_end] == '\''))) {
                int k = std::stoi(t.substr(1, dig_end - 1));
                if (k >= 1 && k <= b.rank()) {
                    out.push_back({t.back() == '\'' ? -k : k});
                    ok = true;
                }
            }
        }
        if (!ok) throw parse_error("morphism has no image for terminal '" + t + "'");
    }
    return out;
}

inline gword apply_morphism(const bound_morphism& m, const std::vector<std::int32_t>& word) {
    gword out;
    for (std::int32_t t : word) {
        const gword& im = m[static_cast<size_t>(t)];
        out.insert(out.end(), im.begin(), im.end());
    }
    return out;
}

namespace detail {

inline std::vector<std::int64_t> parse_cycles(const std::string& text, int degree) {
    std::vector<std::int64_t> img(static_cast<size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw parse_error("malformed permutation '" + text + "': " + why);
    };
    bool any = false;
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == '\t') {
            ++i;
            continue;
        }
        if (text[i] != '(') fail("expected '('");
        ++i;
        std::vector<int> cycle;
        std::string num;
        for (; i < text.size() && text[i] != ')'; ++i) {
            if (text[i] >= '0' && text[i] <= '9') {
                num.push_back(text[i]);
            } else if (text[i] == ' ' || text[i] == ',') {
                if (!num.empty()) cycle.push_back(std::stoi(num)), num.clear();
            } else {
                fail("unexpected character");
            }
        }
        if (i == text.size()) fail("unclosed cycle");
        ++i; // past ')'
        if (!num.empty()) cycle.push_back(std::stoi(num));
        for (int p : cycle)
            if (p < 1 || p > degree) fail("point out of range");
        // apply this cycle after the ones already read (left to right)
        if (cycle.size() > 1) {
            std::vector<std::int64_t> cyc(static_cast<size_t>(degree));
            std::iota(cyc.begin(), cyc.end(), 0);
            for (size_t j = 0; j < cycle.size(); ++j)
                cyc[static_cast<size_t>(cycle[j] - 1)] = cycle[(j + 1) % cycle.size()] - 1;
            for (auto& x : img) x = cyc[static_cast<size_t>(x)];
        }
        any = true;
    }
    if (!any) fail("no cycles");
    return img;
}

} // namespace detail

// Group spec file format:
//   kind: free | free-abelian | permutation
//   rank: <m>                      (free kinds)
//   degree: <d>                    (permutation)
//   gen x<k>: (cycle)(cycle)...    (permutation, one line per generator)
//   map: a -> x1x2', b -> x2       (optional; words juxtaposed or spaced)
// '#' starts a comment.
inline std::pair<group_backend, morphism> parse_group_spec(const std::string& text) {
    std::string kind;
    int rank = -1, degree = -1;
    std::map<int, std::vector<std::int64_t>> gens_raw;
    std::vector<std::pair<int, std::string>> gen_lines;
    morphism mor;
    bool saw_map = false;

    auto lines = split(text, '\n');
    for (size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = lines[ln];
        if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
        line = trim(line);
        if (line.empty()) continue;
        int lno = static_cast<int>(ln + 1);
        auto colon = line.find(':');
        if (colon == std::string::npos) throw parse_error(lno, "expected 'key: value'");
        std::string key = trim(line.substr(0, colon));
        std::string val = trim(line.substr(colon + 1));
        if (key == "kind") {
            kind = val;
        } else if (key == "rank") {
            rank = std::stoi(val);
        } else if (key == "degree") {
            degree = std::stoi(val);
        } else if (key.rfind("gen ", 0) == 0) {
            std::string gname = trim(key.substr(4));
            if (gname.size() < 2 || gname[0] != 'x')
                throw parse_error(lno, "generator must be named x<k>");
            int k = std::stoi(gname.substr(1));
            gen_lines.emplace_back(k, val);
        } else if (key == "map") {
            saw_map = true;
            for (const auto& entry : split(val, ',')) {
                std::string e = trim(entry);
                if (e.empty()) continue;
                auto arrow = e.find("->");
                if (arrow == std::string::npos) throw parse_error(lno, "map entry needs '->'");
                std::string term = trim(e.substr(0, arrow));
                std::string img = trim(e.substr(arrow + 2));
                if (term.empty()) throw parse_error(lno, "map entry has empty terminal");
                mor.entries[term] = group_backend::parse_letters(img);
            }
        } else {
            throw parse_error(lno, "unknown key '" + key + "'");
        }
    }

    group_backend backend;
    if (kind == "free" || kind == "free-abelian") {
        if (rank < 1) throw parse_error("kind '" + kind + "' requires rank >= 1");
        backend = kind == "free" ? group_backend::make_free(rank)
                                 : group_backend::make_abelian(rank);
    } else if (kind == "permutation") {
        if (degree < 1) throw parse_error("kind 'permutation' requires degree >= 1");
        for (auto& [k, val] : gen_lines) {
            if (gens_raw.count(k)) throw parse_error("duplicate generator x" + std::to_string(k));
            gens_raw[k] = detail::parse_cycles(val, degree);
        }
        if (gens_raw.empty()) throw parse_error("kind 'permutation' requires at least one gen line");
        std::vector<std::vector<std::int64_t>> gens;
        for (int k = 1; k <= static_cast<int>(gens_raw.size()); ++k) {
            auto it = gens_raw.find(k);
            if (it == gens_raw.end())
                throw parse_error("generators must be named x1..x" + std::to_string(gens_raw.size()));
            gens.push_back(it->second);
        }
        backend = group_backend::make_permutation(degree, std::move(gens));
    } else if (kind.empty()) {
        throw parse_error("missing 'kind:' line");
    } else {
        throw parse_error("unknown kind '" + kind + "'");
    }

    // validate map images against the rank
    for (const auto& [term, img] : mor.entries)
        for (std::int32_t c : img)
            if ((c > 0 ? c : -c) > backend.rank())
                throw parse_error("map image of '" + term + "' uses a generator out of range");
    (void)saw_map;
    return {backend, mor};
}

} // namespace cfgi
