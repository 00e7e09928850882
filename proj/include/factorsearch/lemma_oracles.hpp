#pragma once

#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "group_table.hpp"
#include "subset_algebra.hpp"

namespace factorsearch {

/// Which divisibility fact a report is about.
///
///   DIV        in a 2-fold factorization G = A·B, |A| divides |⟨A⟩| and |B| divides |⟨B⟩|
///   DIV2_I     |A₁| divides |⟨A₁⁻¹A₁⟩|
///   DIV2_II    |A_k| divides |⟨A_k A_k⁻¹⟩|
///   DIV2_III   interior |A_i| divides the normal closure of A_i⁻¹A_i
///   DIV3       interior |A_i| divides |M| and |M′|, the closures of ⟨A_i⟩
///              under conjugation by ⟨A₁…A_{i-1}⟩ and by ⟨A_{i+1}…A_k⟩
///   PREFIX_DIV DIV applied to the split (A₁…A_j)·(A_{j+1}…A_k) during search
enum class Lemma { DIV, DIV2_I, DIV2_II, DIV2_III, DIV3, PREFIX_DIV };

inline const char* to_string(Lemma l) {
    switch (l) {
        case Lemma::DIV: return "DIV";
        case Lemma::DIV2_I: return "DIV2_I";
        case Lemma::DIV2_II: return "DIV2_II";
        case Lemma::DIV2_III: return "DIV2_III";
        case Lemma::DIV3: return "DIV3";
        case Lemma::PREFIX_DIV: return "PREFIX_DIV";
    }
    return "?";
}

struct LemmaReport {
    Lemma lemma;
    /// 1-based factor position (for DIV and PREFIX_DIV: the cut point j).
    int position;
    int divisor;
    int bound;
    bool holds;
    /// Distinguishes paired reports: "prefix"/"suffix" for DIV, "M"/"M'" for DIV3.
    std::string variant;
};

inline LemmaReport make_report(Lemma lemma, int position, int divisor, int bound,
                               std::string variant = {}) {
    return LemmaReport{lemma, position, divisor, bound, bound % divisor == 0, std::move(variant)};
}

inline LemmaReport check_div(const GroupTable& g, const SubsetMask& a) {
    if (a.empty()) throw InvalidArgument("check_div on empty subset");
    return make_report(Lemma::DIV, 1, a.card(), subgroup_closure(g, a).order());
}

namespace detail {

inline void check_position(std::span<const SubsetMask> factors, int i, bool interior) {
    const int k = int(factors.size());
    if (interior ? (i <= 1 || i >= k) : (i < 1 || i > k))
        throw PositionOutOfRange("position " + std::to_string(i) + " out of range for k = " +
                                 std::to_string(k) + (interior ? " (interior positions only)" : ""));
}

/// Support of A_from ⋯ A_to (1-based, inclusive); {e} when the range is empty.
inline SubsetMask product_support(const GroupTable& g, std::span<const SubsetMask> factors, int from,
                                  int to) {
    if (from > to) return SubsetMask{0};
    return product_multiset(g, factors.subspan(std::size_t(from - 1), std::size_t(to - from + 1)))
        .support();
}

/// Divisibility bound for a candidate factor at 1-based position i of k.
inline LemmaReport div2_bound(const GroupTable& g, const SubsetMask& a, int i, int k) {
    if (i == 1)
        return make_report(Lemma::DIV2_I, i, a.card(),
                           subgroup_closure(g, quotient_set_left(g, a)).order());
    if (i == k)
        return make_report(Lemma::DIV2_II, i, a.card(),
                           subgroup_closure(g, quotient_set_right(g, a)).order());
    return make_report(Lemma::DIV2_III, i, a.card(), normal_closure(g, quotient_set_left(g, a)).order());
}

}  // namespace detail

inline LemmaReport check_div2(const GroupTable& g, std::span<const SubsetMask> factors, int i) {
    detail::check_position(factors, i, false);
    return detail::div2_bound(g, factors[std::size_t(i - 1)], i, int(factors.size()));
}

/// Returns the M report followed by the M′ report.
inline std::pair<LemmaReport, LemmaReport> check_div3(const GroupTable& g,
                                                      std::span<const SubsetMask> factors, int i) {
    detail::check_position(factors, i, true);
    const int k = int(factors.size());
    const auto& a = factors[std::size_t(i - 1)];
    Subgroup h = subgroup_closure(g, a);
    Subgroup before = subgroup_closure(g, detail::product_support(g, factors, 1, i - 1));
    Subgroup after = subgroup_closure(g, detail::product_support(g, factors, i + 1, k));
    return {make_report(Lemma::DIV3, i, a.card(), conjugate_closure_by_subgroup(g, h, before).order(), "M"),
            make_report(Lemma::DIV3, i, a.card(), conjugate_closure_by_subgroup(g, h, after).order(), "M'")};
}

/// DIV at every cut point, DIV2 at every position, DIV3 at every interior
/// position of a factorization.
inline std::vector<LemmaReport> all_lemma_reports(const GroupTable& g,
                                                  std::span<const SubsetMask> factors) {
    std::vector<LemmaReport> out;
    const int k = int(factors.size());
    for (int j = 1; j < k; ++j) {
        SubsetMask prefix = detail::product_support(g, factors, 1, j);
        SubsetMask suffix = detail::product_support(g, factors, j + 1, k);
        out.push_back(make_report(Lemma::DIV, j, prefix.card(), subgroup_closure(g, prefix).order(), "prefix"));
        out.push_back(make_report(Lemma::DIV, j, suffix.card(), subgroup_closure(g, suffix).order(), "suffix"));
    }
    for (int i = 1; i <= k; ++i) out.push_back(check_div2(g, factors, i));
    for (int i = 2; i < k; ++i) {
        auto [m, m_prime] = check_div3(g, factors, i);
        out.push_back(m);
        out.push_back(m_prime);
    }
    return out;
}

/// Rewrites A_i as g_{i-1}⁻¹ A_i g_i with g_0 = e and g_i = (a_1⋯a_i)⁻¹, where
/// a_i is e when A_i already contains it and the smallest member otherwise.
/// Every output factor contains e.
inline std::vector<SubsetMask> normalize_factorization(const GroupTable& g,
                                                       std::span<const SubsetMask> factors) {
    if (factors.empty()) throw NotAFactorization("no factors");
    for (const auto& f : factors)
        if (f.empty()) throw NotAFactorization("empty factor");
    if (!is_factorization(g, factors)) throw NotAFactorization("input is not a factorization");

    std::vector<SubsetMask> out;
    out.reserve(factors.size());
    ElementId shift = 0;  // g_{i-1}
    for (const auto& f : factors) {
        ElementId rep = f.contains_identity() ? 0 : f.first();
        ElementId next = g.multiply(g.inverse(rep), shift);  // g_i = a_i⁻¹ g_{i-1}
        out.push_back(translate_right(g, translate_left(g, g.inverse(shift), f), next));
        shift = next;
    }
    return out;
}

/// True when the injective prefix product's cardinality fails to divide the
/// order of the subgroup its support generates. remaining_sizes only matters
/// in that an empty remainder (complete product) never prunes.
inline bool prefix_divisibility_prune(const GroupTable& g, const ProductMultiset& prefix,
                                      std::span<const int> remaining_sizes) {
    if (remaining_sizes.empty()) return false;
    SubsetMask support = prefix.support();
    return subgroup_closure(g, support).order() % support.card() != 0;
}

}  // namespace factorsearch
