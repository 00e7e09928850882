#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "errors.hpp"

namespace factorsearch {

using ElementId = int;

/// Capacity of a SubsetMask in elements. Groups larger than this cannot be
/// represented regardless of the configured order limit.
inline constexpr int kMaskCapacity = 128;

/// Membership mask over element identifiers 0..kMaskCapacity-1 with a cached
/// cardinality.
class SubsetMask {
public:
    static constexpr int kWords = kMaskCapacity / 64;

    constexpr SubsetMask() = default;

    SubsetMask(std::initializer_list<ElementId> elements) {
        for (ElementId e : elements) set(e);
    }

    static SubsetMask from_list(const std::vector<ElementId>& elements) {
        SubsetMask m;
        for (ElementId e : elements) {
            if (e < 0 || e >= kMaskCapacity)
                throw InvalidArgument("element index " + std::to_string(e) + " out of mask range");
            m.set(e);
        }
        return m;
    }

    /// The set {0, ..., n-1}.
    static SubsetMask full(int n) {
        SubsetMask m;
        for (int w = 0; w < kWords; ++w) {
            int lo = w * 64;
            if (n >= lo + 64)
                m.words_[w] = ~std::uint64_t{0};
            else if (n > lo)
                m.words_[w] = (std::uint64_t{1} << (n - lo)) - 1;
        }
        m.card_ = n;
        return m;
    }

    bool test(ElementId e) const noexcept {
        return (words_[e >> 6] >> (e & 63)) & 1u;
    }

    void set(ElementId e) noexcept {
        if (!test(e)) {
            words_[e >> 6] |= std::uint64_t{1} << (e & 63);
            ++card_;
        }
    }

    void reset(ElementId e) noexcept {
        if (test(e)) {
            words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
            --card_;
        }
    }

    int card() const noexcept { return card_; }
    bool empty() const noexcept { return card_ == 0; }
    bool contains_identity() const noexcept { return words_[0] & 1u; }

    bool intersects(const SubsetMask& other) const noexcept {
        for (int w = 0; w < kWords; ++w)
            if (words_[w] & other.words_[w]) return true;
        return false;
    }

    bool is_subset_of(const SubsetMask& other) const noexcept {
        for (int w = 0; w < kWords; ++w)
            if (words_[w] & ~other.words_[w]) return false;
        return true;
    }

    SubsetMask& operator|=(const SubsetMask& other) noexcept {
        for (int w = 0; w < kWords; ++w) words_[w] |= other.words_[w];
        recount();
        return *this;
    }

    SubsetMask& operator&=(const SubsetMask& other) noexcept {
        for (int w = 0; w < kWords; ++w) words_[w] &= other.words_[w];
        recount();
        return *this;
    }

    friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) noexcept { return a |= b; }
    friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) noexcept { return a &= b; }

    friend bool operator==(const SubsetMask& a, const SubsetMask& b) noexcept {
        return a.words_ == b.words_;
    }

    /// Calls f(e) for every member in ascending order.
    template <typename F>
    void for_each(F&& f) const {
        for (int w = 0; w < kWords; ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                int b = std::countr_zero(bits);
                f(static_cast<ElementId>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

    /// Smallest member, or -1 when empty.
    ElementId first() const noexcept {
        for (int w = 0; w < kWords; ++w)
            if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
        return -1;
    }

    std::vector<ElementId> to_vector() const {
        std::vector<ElementId> out;
        out.reserve(static_cast<std::size_t>(card_));
        for_each([&](ElementId e) { out.push_back(e); });
        return out;
    }

    const std::array<std::uint64_t, kWords>& words() const noexcept { return words_; }

private:
    void recount() noexcept {
        card_ = 0;
        for (auto w : words_) card_ += std::popcount(w);
    }

    std::array<std::uint64_t, kWords> words_{};
    int card_ = 0;
};

}  // namespace factorsearch
