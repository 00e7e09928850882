#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "subset_mask.hpp"

namespace factorsearch {

/// An immutable finite group given by its Cayley table. Element 0 is always
/// the identity; table(a, b) is the product a·b.
class GroupTable {
public:
    int order() const noexcept { return order_; }
    const std::string& name() const noexcept { return name_; }

    ElementId multiply(ElementId a, ElementId b) const noexcept {
        return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) +
                      static_cast<std::size_t>(b)];
    }

    ElementId inverse(ElementId a) const noexcept { return inverse_[static_cast<std::size_t>(a)]; }

    /// g·a·g⁻¹
    ElementId conjugate(ElementId g, ElementId a) const noexcept {
        return multiply(multiply(g, a), inverse(g));
    }

    SubsetMask all() const { return SubsetMask::full(order_); }

    bool valid(ElementId a) const noexcept { return a >= 0 && a < order_; }

    std::vector<std::vector<int>> rows() const {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(order_));
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b) out[static_cast<std::size_t>(a)].push_back(multiply(a, b));
        return out;
    }

    friend GroupTable from_cayley_table(int order, const std::vector<std::vector<int>>& rows,
                                        std::string name);

private:
    GroupTable() = default;

    int order_ = 0;
    std::vector<std::uint8_t> table_;
    std::vector<std::uint8_t> inverse_;
    std::string name_;
};

/// Validates rows as a group multiplication table and builds a GroupTable.
/// The identity is relabelled to index 0 by swapping it with whatever element
/// held that index. Checks run in the order shape, range, Latin square,
/// associativity (full n³ scan), identity.
inline GroupTable from_cayley_table(int order, const std::vector<std::vector<int>>& rows,
                                    std::string name) {
    if (order < 1) throw BadShape("group order must be positive, got " + std::to_string(order));
    if (order > kMaskCapacity)
        throw TooLarge("order " + std::to_string(order) + " exceeds mask capacity " +
                       std::to_string(kMaskCapacity));
    const auto n = static_cast<std::size_t>(order);
    if (rows.size() != n)
        throw BadShape("expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
    for (std::size_t a = 0; a < n; ++a) {
        if (rows[a].size() != n)
            throw BadShape("row " + std::to_string(a) + " has " + std::to_string(rows[a].size()) +
                           " entries, expected " + std::to_string(n));
        for (std::size_t b = 0; b < n; ++b)
            if (rows[a][b] < 0 || rows[a][b] >= order)
                throw BadShape("entry (" + std::to_string(a) + "," + std::to_string(b) +
                               ") = " + std::to_string(rows[a][b]) + " out of range");
    }

    for (std::size_t a = 0; a < n; ++a) {
        std::vector<bool> row_seen(n), col_seen(n);
        for (std::size_t b = 0; b < n; ++b) {
            auto r = static_cast<std::size_t>(rows[a][b]);
            auto c = static_cast<std::size_t>(rows[b][a]);
            if (row_seen[r])
                throw NotAGroup("row " + std::to_string(a) + " is not a permutation");
            if (col_seen[c])
                throw NotAGroup("column " + std::to_string(a) + " is not a permutation");
            row_seen[r] = col_seen[c] = true;
        }
    }

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto ab = static_cast<std::size_t>(rows[a][b]);
            for (std::size_t c = 0; c < n; ++c) {
                auto bc = static_cast<std::size_t>(rows[b][c]);
                if (rows[ab][c] != rows[a][bc])
                    throw NotAGroup("associativity fails for (" + std::to_string(a) + "," +
                                        std::to_string(b) + "," + std::to_string(c) + ")",
                                    std::array<int, 3>{int(a), int(b), int(c)});
            }
        }

    int identity = -1;
    for (std::size_t e = 0; e < n && identity < 0; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
            ok = rows[e][a] == int(a) && rows[a][e] == int(a);
        if (ok) identity = int(e);
    }
    if (identity < 0) throw NotAGroup("no identity element");

    // relabel: swap identity and 0
    std::vector<int> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::swap(relabel[0], relabel[static_cast<std::size_t>(identity)]);

    GroupTable g;
    g.order_ = order;
    g.name_ = std::move(name);
    g.table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            g.table_[static_cast<std::size_t>(relabel[a]) * n + static_cast<std::size_t>(relabel[b])] =
                static_cast<std::uint8_t>(relabel[static_cast<std::size_t>(rows[a][b])]);
    g.inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (g.table_[a * n + b] == 0) g.inverse_[a] = static_cast<std::uint8_t>(b);
    return g;
}

/// Componentwise product; (a, b) sits at index a·|right| + b.
inline GroupTable direct_product(const GroupTable& left, const GroupTable& right, int max_order,
                                 std::string name) {
    const long long order = static_cast<long long>(left.order()) * right.order();
    if (order > max_order || order > kMaskCapacity)
        throw TooLarge("direct product order " + std::to_string(order) + " exceeds limit " +
                       std::to_string(std::min(max_order, kMaskCapacity)));
    const int m = right.order();
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(order), std::vector<int>(order));
    for (int a1 = 0; a1 < left.order(); ++a1)
        for (int b1 = 0; b1 < m; ++b1)
            for (int a2 = 0; a2 < left.order(); ++a2)
                for (int b2 = 0; b2 < m; ++b2)
                    rows[static_cast<std::size_t>(a1 * m + b1)][static_cast<std::size_t>(a2 * m + b2)] =
                        left.multiply(a1, a2) * m + right.multiply(b1, b2);
    return from_cayley_table(int(order), rows, std::move(name));
}

inline int element_order(const GroupTable& g, ElementId a) {
    int k = 1;
    for (ElementId x = a; x != 0; x = g.multiply(x, a)) ++k;
    return k;
}

/// A subgroup, stored as its member mask.
struct Subgroup {
    SubsetMask members;

    int order() const noexcept { return members.card(); }
    bool contains(ElementId a) const noexcept { return members.test(a); }
    friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

namespace detail {

/// Subgroup generated by `generators` (identity included), by breadth-first
/// closure under right multiplication. In a finite group this also closes
/// under inverses since a⁻¹ is a power of a.
inline Subgroup generate(const GroupTable& g, const std::vector<ElementId>& generators) {
    SubsetMask seen;
    seen.set(0);
    std::vector<ElementId> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        ElementId x = queue[head];
        for (ElementId s : generators) {
            ElementId y = g.multiply(x, s);
            if (!seen.test(y)) {
                seen.set(y);
                queue.push_back(y);
            }
        }
    }
    if (g.order() % seen.card() != 0)
        throw Error("internal: closure of order " + std::to_string(seen.card()) +
                    " does not divide group order " + std::to_string(g.order()));
    return Subgroup{seen};
}

}  // namespace detail

inline Subgroup subgroup_closure(const GroupTable& g, const SubsetMask& seed) {
    return detail::generate(g, seed.to_vector());
}

/// Least normal subgroup containing seed: the subgroup generated by every
/// conjugate of every seed element.
inline Subgroup normal_closure(const GroupTable& g, const SubsetMask& seed) {
    SubsetMask conjugates;
    seed.for_each([&](ElementId s) {
        for (ElementId x = 0; x < g.order(); ++x) conjugates.set(g.conjugate(x, s));
    });
    return subgroup_closure(g, conjugates);
}

/// Subgroup generated by k·h·k⁻¹ for h in h_group, k in k_group.
inline Subgroup conjugate_closure_by_subgroup(const GroupTable& g, const Subgroup& h_group,
                                              const Subgroup& k_group) {
    SubsetMask conjugates;
    h_group.members.for_each([&](ElementId h) {
        k_group.members.for_each([&](ElementId k) { conjugates.set(g.conjugate(k, h)); });
    });
    return subgroup_closure(g, conjugates);
}

inline bool is_subgroup(const GroupTable& g, const SubsetMask& s) {
    if (!s.test(0)) return false;
    bool closed = true;
    s.for_each([&](ElementId a) {
        if (!s.test(g.inverse(a))) closed = false;
        s.for_each([&](ElementId b) {
            if (!s.test(g.multiply(a, b))) closed = false;
        });
    });
    return closed;
}

}  // namespace factorsearch
