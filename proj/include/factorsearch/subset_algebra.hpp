#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "errors.hpp"
#include "group_table.hpp"
#include "subset_mask.hpp"

namespace factorsearch {

inline SubsetMask translate_left(const GroupTable& g, ElementId by, const SubsetMask& a) {
    SubsetMask out;
    a.for_each([&](ElementId x) { out.set(g.multiply(by, x)); });
    return out;
}

inline SubsetMask translate_right(const GroupTable& g, const SubsetMask& a, ElementId by) {
    SubsetMask out;
    a.for_each([&](ElementId x) { out.set(g.multiply(x, by)); });
    return out;
}

inline SubsetMask inverse_set(const GroupTable& g, const SubsetMask& a) {
    SubsetMask out;
    a.for_each([&](ElementId x) { out.set(g.inverse(x)); });
    return out;
}

/// A⁻¹A = { x⁻¹y : x, y ∈ A }
inline SubsetMask quotient_set_left(const GroupTable& g, const SubsetMask& a) {
    if (a.empty()) throw InvalidArgument("quotient set of an empty subset");
    SubsetMask out;
    a.for_each([&](ElementId x) {
        ElementId xi = g.inverse(x);
        a.for_each([&](ElementId y) { out.set(g.multiply(xi, y)); });
    });
    return out;
}

/// AA⁻¹ = { x y⁻¹ : x, y ∈ A }
inline SubsetMask quotient_set_right(const GroupTable& g, const SubsetMask& a) {
    if (a.empty()) throw InvalidArgument("quotient set of an empty subset");
    SubsetMask out;
    a.for_each([&](ElementId x) {
        a.for_each([&](ElementId y) { out.set(g.multiply(x, g.inverse(y))); });
    });
    return out;
}

/// Multiplicity of each element among all products a₁·…·a_k. Counts saturate
/// at 255; only the distinction 0 / 1 / many matters for injectivity.
struct ProductMultiset {
    std::vector<std::uint8_t> counts;
    /// Product of the factor cardinalities (saturating at uint64 max).
    std::uint64_t total = 0;
    bool saturated = false;

    int support_size() const {
        int s = 0;
        for (auto c : counts) s += c != 0;
        return s;
    }

    bool injective() const {
        for (auto c : counts)
            if (c > 1) return false;
        return true;
    }

    SubsetMask support() const {
        SubsetMask m;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i]) m.set(ElementId(i));
        return m;
    }
};

inline ProductMultiset product_multiset(const GroupTable& g, std::span<const SubsetMask> factors) {
    if (factors.empty()) throw InvalidArgument("product of zero factors");
    for (const auto& f : factors)
        if (f.empty()) throw InvalidArgument("empty factor in product");

    const auto n = static_cast<std::size_t>(g.order());
    constexpr unsigned kCap = std::numeric_limits<std::uint8_t>::max();
    ProductMultiset p;
    p.counts.assign(n, 0);
    factors[0].for_each([&](ElementId x) { p.counts[static_cast<std::size_t>(x)] = 1; });
    p.total = static_cast<std::uint64_t>(factors[0].card());

    std::vector<std::uint8_t> next(n);
    for (std::size_t i = 1; i < factors.size(); ++i) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t y = 0; y < n; ++y) {
            if (!p.counts[y]) continue;
            factors[i].for_each([&](ElementId b) {
                auto& slot = next[static_cast<std::size_t>(g.multiply(ElementId(y), b))];
                unsigned sum = unsigned(slot) + p.counts[y];
                if (sum > kCap) {
                    sum = kCap;
                    p.saturated = true;
                }
                slot = static_cast<std::uint8_t>(sum);
            });
        }
        p.counts.swap(next);
        const auto c = static_cast<std::uint64_t>(factors[i].card());
        p.total = p.total > std::numeric_limits<std::uint64_t>::max() / c
                      ? std::numeric_limits<std::uint64_t>::max()
                      : p.total * c;
    }

    if (!p.saturated && p.total != std::numeric_limits<std::uint64_t>::max()) {
        std::uint64_t sum = 0;
        for (auto c : p.counts) sum += c;
        if (sum != p.total) throw Error("internal: product multiset lost mass");
    }
    return p;
}

inline bool is_factorization(const GroupTable& g, std::span<const SubsetMask> factors) {
    if (factors.empty()) throw InvalidArgument("factorization needs at least one factor");
    std::uint64_t card_product = 1;
    for (const auto& f : factors) {
        if (f.empty()) throw InvalidArgument("empty factor");
        card_product *= static_cast<std::uint64_t>(f.card());
        if (card_product > static_cast<std::uint64_t>(g.order())) return false;
    }
    if (card_product != static_cast<std::uint64_t>(g.order())) return false;
    auto p = product_multiset(g, factors);
    for (auto c : p.counts)
        if (c != 1) return false;
    return true;
}

}  // namespace factorsearch
