#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "group_table.hpp"

namespace factorsearch {

inline constexpr int kDefaultMaxOrder = 120;

/// Parsed form of the group-spec mini-language:
///
///     spec  := "file:" path | term ("x" term)*
///     term  := "C" n | "D" n | "S" n | "A" n | "Q8"
///
/// D{n} is the dihedral group of order 2n. Whitespace around terms is ignored.
struct GroupSpec {
    struct Term {
        char kind;  // 'C', 'D', 'S', 'A' or 'Q' (Q8)
        int n;
        friend bool operator==(const Term&, const Term&) = default;
    };

    std::vector<Term> terms;
    std::optional<std::string> file;

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

    static GroupSpec parse(std::string_view text) {
        GroupSpec spec;
        std::size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        };
        skip_ws();
        if (text.substr(pos, 5) == "file:") {
            std::string path(text.substr(pos + 5));
            while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
            if (path.empty()) throw UnknownSpec("empty file path", pos + 5);
            spec.file = std::move(path);
            return spec;
        }
        while (true) {
            skip_ws();
            if (pos >= text.size()) throw UnknownSpec("expected a group term", pos);
            const std::size_t term_pos = pos;
            char kind = text[pos];
            if (kind != 'C' && kind != 'D' && kind != 'S' && kind != 'A' && kind != 'Q')
                throw UnknownSpec(std::string("unknown group kind '") + kind + "'", pos);
            ++pos;
            std::size_t digits_start = pos;
            long long n = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                n = n * 10 + (text[pos] - '0');
                if (n > 1'000'000) throw UnknownSpec("parameter too large", digits_start);
                ++pos;
            }
            if (pos == digits_start) throw UnknownSpec("expected a number after kind", pos);
            if (kind == 'Q' && n != 8) throw UnknownSpec("only Q8 is supported", term_pos);
            if (n < 1) throw UnknownSpec("parameter must be at least 1", digits_start);
            spec.terms.push_back(Term{kind, int(n)});
            skip_ws();
            if (pos == text.size()) break;
            if (text[pos] != 'x') throw UnknownSpec("expected 'x' between terms", pos);
            ++pos;
        }
        return spec;
    }

    std::string to_string() const {
        if (file) return "file:" + *file;
        std::string out;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i) out += 'x';
            out += terms[i].kind;
            out += std::to_string(terms[i].n);
        }
        return out;
    }
};

namespace detail {

inline long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Order of a catalog term, saturating well above any realistic limit.
inline long long term_order(const GroupSpec::Term& t) {
    switch (t.kind) {
        case 'C': return t.n;
        case 'D': return 2LL * t.n;
        case 'Q': return 8;
        case 'S': return t.n > 12 ? (1LL << 40) : factorial(t.n);
        case 'A': return t.n > 12 ? (1LL << 40) : std::max(1LL, factorial(t.n) / 2);
    }
    return 0;
}

inline GroupTable cyclic(int n, std::string name) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
    return from_cayley_table(n, rows, std::move(name));
}

/// Elements r^i s^j at index j·n + i; s r s⁻¹ = r⁻¹.
inline GroupTable dihedral(int n, std::string name) {
    const int order = 2 * n;
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(order), std::vector<int>(order));
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y) {
            int i = x % n, j = x / n, k = y % n, l = y / n;
            int rot = ((j == 0 ? i + k : i - k) % n + n) % n;
            rows[x][y] = ((j + l) % 2) * n + rot;
        }
    return from_cayley_table(order, rows, std::move(name));
}

}  // namespace detail

/// Permutations of {0..n-1} in lexicographic one-line order, even ones only
/// when even_only. Entry i is the permutation carried by element i of S{n}
/// (or A{n}).
inline std::vector<std::vector<int>> catalog_permutations(int n, bool even_only) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
        if (!even_only || inversions % 2 == 0) perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

namespace detail {

/// Composition is (p·q)(x) = p(q(x)).
inline GroupTable symmetric(int n, bool even_only, std::string name) {
    const auto perms = catalog_permutations(n, even_only);

    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = int(i);
    const auto order = perms.size();
    std::vector<std::vector<int>> rows(order, std::vector<int>(order));
    std::vector<int> composed(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            for (int x = 0; x < n; ++x) composed[x] = perms[a][perms[b][x]];
            rows[a][b] = index.at(composed);
        }
    return from_cayley_table(int(order), rows, std::move(name));
}

/// Quaternion group; index 2·u + s for unit u in (1, i, j, k) and sign bit s.
inline GroupTable quaternion(std::string name) {
    auto unit_product = [](int a, int b) -> std::pair<int, int> {  // (unit, negative?)
        if (a == 0) return {b, 0};
        if (b == 0) return {a, 0};
        if (a == b) return {0, 1};
        int c = 6 - a - b;
        bool cyclic_order = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
        return {c, cyclic_order ? 0 : 1};
    };
    std::vector<std::vector<int>> rows(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            auto [u, neg] = unit_product(x / 2, y / 2);
            rows[x][y] = 2 * u + ((neg + x % 2 + y % 2) % 2);
        }
    return from_cayley_table(8, rows, std::move(name));
}

}  // namespace detail

/// Reads the text Cayley-table format: first n, then n rows of n integers.
inline GroupTable load_cayley_table_file(const std::string& path, std::string name) {
    std::ifstream in(path);
    if (!in) throw BadShape("cannot open Cayley table file '" + path + "'");
    long long n = 0;
    if (!(in >> n) || n < 1) throw BadShape("expected a positive order on line 1 of '" + path + "'");
    if (n > kMaskCapacity) throw TooLarge("order " + std::to_string(n) + " exceeds mask capacity");
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(n), std::vector<int>(n));
    for (auto& row : rows)
        for (auto& v : row)
            if (!(in >> v)) throw BadShape("truncated Cayley table in '" + path + "'");
    std::string trailing;
    if (in >> trailing) throw BadShape("trailing data after Cayley table in '" + path + "'");
    return from_cayley_table(int(n), rows, std::move(name));
}

/// Order the spec would produce, without building it. Files are loaded.
inline long long spec_order(const GroupSpec& spec) {
    if (spec.file) return load_cayley_table_file(*spec.file, spec.to_string()).order();
    long long order = 1;
    for (const auto& t : spec.terms) order = std::min(order * detail::term_order(t), 1LL << 40);
    return order;
}

inline GroupTable make_group(const GroupSpec& spec, int max_order = kDefaultMaxOrder) {
    const std::string name = spec.to_string();
    if (spec.file) {
        auto g = load_cayley_table_file(*spec.file, name);
        if (g.order() > max_order)
            throw TooLarge(name + " has order " + std::to_string(g.order()) + ", limit " +
                           std::to_string(max_order));
        return g;
    }
    const long long order = spec_order(spec);
    if (order > max_order || order > kMaskCapacity)
        throw TooLarge(name + " has order " + std::to_string(order) + ", limit " +
                       std::to_string(std::min(max_order, kMaskCapacity)));

    auto build_term = [](const GroupSpec::Term& t) {
        std::string term_name = GroupSpec{{t}, std::nullopt}.to_string();
        switch (t.kind) {
            case 'C': return detail::cyclic(t.n, term_name);
            case 'D': return detail::dihedral(t.n, term_name);
            case 'S': return detail::symmetric(t.n, false, term_name);
            case 'A': return detail::symmetric(t.n, true, term_name);
            default: return detail::quaternion(term_name);
        }
    };
    GroupTable g = build_term(spec.terms.front());
    for (std::size_t i = 1; i < spec.terms.size(); ++i) {
        GroupSpec prefix{{spec.terms.begin(), spec.terms.begin() + long(i) + 1}, std::nullopt};
        g = direct_product(g, build_term(spec.terms[i]), max_order, prefix.to_string());
    }
    return g;
}

inline GroupTable make_catalog_group(std::string_view spec, int max_order = kDefaultMaxOrder) {
    return make_group(GroupSpec::parse(spec), max_order);
}

/// Canonical printed form of a spec string (for comparing specs).
inline std::string canonical_spec(std::string_view spec) { return GroupSpec::parse(spec).to_string(); }

/// Built-in groups of order at most 24, sorted by order. Isomorphic
/// duplicates (S3 = D3, D2 = C2xC2, ...) appear once under one name.
inline const std::vector<std::string>& builtin_catalog() {
    static const std::vector<std::string> specs = [] {
        std::vector<std::string> s;
        for (int n = 1; n <= 24; ++n) s.push_back("C" + std::to_string(n));
        for (int n = 3; n <= 12; ++n) s.push_back("D" + std::to_string(n));
        for (const char* extra :
             {"Q8", "A4", "S4", "C2xC2", "C2xC4", "C2xC2xC2", "C3xC3", "C2xC6", "C2xC8", "C4xC4",
              "C2xC2xC4", "C2xC2xC2xC2", "C3xC6", "C2xC10", "C2xC12", "C2xC2xC6", "C2xD4", "C2xQ8",
              "C3xD3", "C2xA4", "C3xD4", "C3xQ8", "C4xD3", "C2xD6"})
            s.push_back(extra);
        std::stable_sort(s.begin(), s.end(), [](const std::string& a, const std::string& b) {
            return spec_order(GroupSpec::parse(a)) < spec_order(GroupSpec::parse(b));
        });
        return s;
    }();
    return specs;
}

inline std::vector<std::string> catalog_up_to(int max_order) {
    std::vector<std::string> out;
    for (const auto& s : builtin_catalog())
        if (spec_order(GroupSpec::parse(s)) <= max_order) out.push_back(s);
    return out;
}

}  // namespace factorsearch
