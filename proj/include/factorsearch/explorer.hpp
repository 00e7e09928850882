#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "catalog.hpp"
#include "factor_search.hpp"

namespace factorsearch {

enum class AtlasStatus { EXISTS, NONE, SKIPPED };

inline const char* to_string(AtlasStatus s) {
    switch (s) {
        case AtlasStatus::EXISTS: return "EXISTS";
        case AtlasStatus::NONE: return "NONE";
        case AtlasStatus::SKIPPED: return "SKIPPED";
    }
    return "?";
}

struct AtlasRow {
    std::string group;
    int order = 0;
    SizeProfile profile;
    AtlasStatus status = AtlasStatus::SKIPPED;
    std::optional<SearchReport> report;
    /// Set for NONE rows when brute force ran within budget.
    std::optional<bool> oracle_exists;
    std::string note;

    bool exists() const noexcept { return status == AtlasStatus::EXISTS; }
};

struct AtlasOptions {
    SearchOptions search{};
    /// Node budget for the search and tuple budget for the oracle cross-check.
    std::uint64_t budget = kDefaultBudget;
    bool cross_check = true;
    int max_order = kDefaultMaxOrder;
};

/// Searches every ordered size profile with k parts, for each k in ks and
/// each group in catalog. NONE rows are cross-checked by brute force when the
/// oracle fits the budget; a disagreement is an engine bug and throws.
inline std::vector<AtlasRow> run_atlas(const std::vector<std::string>& catalog, const std::vector<int>& ks,
                                       const AtlasOptions& options = {}) {
    std::vector<AtlasRow> rows;
    for (const auto& spec : catalog) {
        GroupTable g = make_catalog_group(spec, options.max_order);
        for (int k : ks) {
            for (const auto& profile : ordered_profiles(g.order(), k)) {
                AtlasRow row;
                row.group = g.name();
                row.order = g.order();
                row.profile = profile;
                SearchOptions so = options.search;
                so.node_budget = options.budget;
                try {
                    row.report = search(g, profile, so);
                    row.status = row.report->found() ? AtlasStatus::EXISTS : AtlasStatus::NONE;
                } catch (const BudgetExceeded& e) {
                    row.status = AtlasStatus::SKIPPED;
                    row.note = e.what();
                }
                if (row.status == AtlasStatus::NONE && options.cross_check) {
                    try {
                        row.oracle_exists = brute_force_exists(g, profile.sizes, options.budget);
                    } catch (const BudgetExceeded& e) {
                        row.note = std::string("oracle skipped: ") + e.what();
                    }
                    if (row.oracle_exists.value_or(false))
                        throw Error("internal: search reports no factorization of " + g.name() + " with sizes " +
                                    profile.to_string() + " but brute force finds one");
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

struct QA2Finding {
    std::string group;
    FactorizationCertificate certificate;
    int card_a2 = 0;
    int closure_order = 0;
    bool divides = true;
    bool normalized = true;
};

struct QA2Skip {
    std::string group;
    SizeProfile profile;
    bool normalized;
    std::string reason;
};

struct QA2Summary {
    int groups = 0;
    int profiles_swept = 0;
    std::uint64_t factorizations_checked = 0;
    std::uint64_t violations = 0;
    bool unnormalized_pass = false;
    std::vector<QA2Skip> skipped;
    std::string scope;
};

struct QA2Result {
    std::vector<QA2Finding> findings;
    QA2Summary summary;

    std::vector<QA2Finding> violations() const {
        std::vector<QA2Finding> out;
        for (const auto& f : findings)
            if (!f.divides) out.push_back(f);
        return out;
    }
};

struct QA2Options {
    SearchOptions search{};
    /// Also enumerate factorizations whose factors need not contain e.
    bool unnormalized = false;
    std::uint64_t budget = kDefaultBudget;
    int max_order = kDefaultMaxOrder;
};

inline QA2Finding make_qa2_finding(const GroupTable& g, const FactorizationCertificate& cert, bool normalized) {
    SubsetMask a2 = SubsetMask::from_list(cert.factors.at(1));
    QA2Finding f{g.name(), cert, a2.card(), subgroup_closure(g, a2).order(), true, normalized};
    f.divides = f.closure_order % f.card_a2 == 0;
    return f;
}

/// For each 3-fold factorization G = A₁·A₂·A₃, records whether |A₂| divides
/// |⟨A₂⟩|. Reports what it finds; a violation is a finding, not an error.
inline QA2Result explore_qa2(const std::vector<std::string>& catalog, const QA2Options& options = {}) {
    QA2Result result;
    auto& summary = result.summary;
    summary.unnormalized_pass = options.unnormalized;
    for (const auto& spec : catalog) {
        GroupTable g = make_catalog_group(spec, options.max_order);
        ++summary.groups;
        for (const auto& profile : ordered_profiles(g.order(), 3)) {
            ++summary.profiles_swept;
            for (bool normalized : {true, false}) {
                if (!normalized && !options.unnormalized) continue;
                SearchOptions so = options.search;
                so.normalize = normalized;
                so.node_budget = options.budget;
                try {
                    for (const auto& cert : enumerate_all(g, profile, so)) {
                        result.findings.push_back(make_qa2_finding(g, cert, normalized));
                        ++summary.factorizations_checked;
                        if (!result.findings.back().divides) ++summary.violations;
                    }
                } catch (const BudgetExceeded& e) {
                    summary.skipped.push_back(QA2Skip{g.name(), profile, normalized, e.what()});
                }
            }
        }
    }
    summary.scope = options.unnormalized
                        ? "all factorizations (normalized and unnormalized passes)"
                        : "normalized factorizations only (every factor contains e); "
                          "translates that move A2 off e were not enumerated";
    if (!summary.skipped.empty()) summary.scope += "; some profiles skipped on budget";
    return result;
}

struct Div3GapCase {
    std::string group;
    std::string subgroup;
    FactorizationCertificate certificate;
    bool is_factorization = false;
    int card_a2 = 0;
    int m_order = 0;
    int m_prime_order = 0;
    bool m_divisible = false;
    bool m_prime_divisible = false;
};

struct Div3GapReport {
    std::vector<Div3GapCase> cases;
    double elapsed_ms = 0;
};

/// Coset representatives t, chosen greedily in index order, with H·T = G
/// bijectively.
inline SubsetMask coset_transversal(const GroupTable& g, const Subgroup& h) {
    SubsetMask covered, reps;
    for (ElementId t = 0; t < g.order(); ++t) {
        if (covered.test(t)) continue;
        reps.set(t);
        covered |= translate_right(g, h.members, t);
    }
    return reps;
}

/// Point stabilizer of `point` inside the catalog group S{n} or A{n}.
inline Subgroup point_stabilizer(const GroupTable& g, int n, bool even_only, int point) {
    const auto perms = catalog_permutations(n, even_only);
    if (int(perms.size()) != g.order()) throw InvalidArgument("group is not the expected permutation group");
    SubsetMask m;
    for (std::size_t i = 0; i < perms.size(); ++i)
        if (perms[i][std::size_t(point)] == point) m.set(ElementId(i));
    return Subgroup{m};
}

inline Div3GapCase div3_gap_case(const GroupTable& g, const Subgroup& h, std::string label) {
    std::vector<SubsetMask> factors{SubsetMask{0}, h.members, coset_transversal(g, h)};
    Div3GapCase c;
    c.group = g.name();
    c.subgroup = std::move(label);
    c.certificate = make_certificate(g, SizeProfile{{1, h.order(), g.order() / h.order()}}, factors);
    c.is_factorization = is_factorization(g, factors);
    if (!c.is_factorization) throw Error("internal: ({e}, H, transversal) is not a factorization");
    auto [m, m_prime] = check_div3(g, factors, 2);
    c.card_a2 = h.order();
    c.m_order = m.bound;
    c.m_prime_order = m_prime.bound;
    c.m_divisible = m.holds;
    c.m_prime_divisible = m_prime.holds;
    return c;
}

/// ({e}, H, transversal) on the simple group A5 with H a point stabilizer,
/// contrasted with A4 (not simple) for H the Klein subgroup and for H a point
/// stabilizer.
inline Div3GapReport demo_div3_gap() {
    auto start = std::chrono::steady_clock::now();
    Div3GapReport report;
    GroupTable a5 = make_catalog_group("A5");
    report.cases.push_back(div3_gap_case(a5, point_stabilizer(a5, 5, true, 4), "stabilizer of point 4 (A4 copy)"));

    GroupTable a4 = make_catalog_group("A4");
    SubsetMask klein{0};
    for (ElementId a = 1; a < a4.order(); ++a)
        if (element_order(a4, a) == 2) klein.set(a);
    report.cases.push_back(div3_gap_case(a4, Subgroup{klein}, "Klein four-group (normal)"));
    report.cases.push_back(div3_gap_case(a4, point_stabilizer(a4, 4, true, 3), "stabilizer of point 3 (order 3)"));
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace factorsearch
