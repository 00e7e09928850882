#include <factorsearch/brute_force.hpp>
#include <factorsearch/catalog.hpp>
#include <factorsearch/factor_search.hpp>

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"

using namespace factorsearch;

namespace {

SearchReport run(const char* group, std::vector<int> sizes, SearchOptions o = {}) {
    return search(make_catalog_group(group), SizeProfile{std::move(sizes)}, o);
}

}  // namespace

TEST(Search, A4TwoThreeTwoHasNoFactorization) {
    auto r = run("A4", {2, 3, 2});
    EXPECT_FALSE(r.found());
    EXPECT_TRUE(r.normalized);
    EXPECT_LE(r.nodes_by_position[2], 11u * 55u * 11u);
}

TEST(Search, TrivialProfile) {
    auto g = make_catalog_group("D5");
    auto r = search(g, SizeProfile{{1, 10}});
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.witness->factors[0], (std::vector<ElementId>{0}));
    EXPECT_EQ(r.witness->factors[1], g.all().to_vector());
}

TEST(Search, SingleFactorIsTheWholeGroup) {
    auto g = make_catalog_group("Q8");
    auto r = search(g, SizeProfile{{8}});
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.witness->factors.size(), 1u);
    EXPECT_EQ(r.witness->factors[0].size(), 8u);
    EXPECT_EQ(enumerate_all(g, SizeProfile{{8}}).size(), 1u);
}

TEST(Search, A4FourThreeWitness) {
    auto g = make_catalog_group("A4");
    ASSERT_TRUE(brute_force_exists(g, {4, 3}));
    auto r = search(g, SizeProfile{{4, 3}});
    ASSERT_TRUE(r.found());
    EXPECT_NO_THROW(verify_certificate(g, *r.witness));
}

TEST(Search, OrderSensitivity) {
    auto g = make_catalog_group("A4");
    for (std::vector<int> sizes : {std::vector<int>{2, 2, 3}, std::vector<int>{3, 2, 2}}) {
        ASSERT_TRUE(brute_force_exists(g, sizes));
        auto r = search(g, SizeProfile{sizes});
        ASSERT_TRUE(r.found());
        EXPECT_EQ(r.witness->sizes, sizes);
        EXPECT_NO_THROW(verify_certificate(g, *r.witness));
    }
    EXPECT_FALSE(search(g, SizeProfile{{2, 3, 2}}).found());
}

TEST(Search, ProfileMismatch) {
    auto g = make_catalog_group("C6");
    EXPECT_THROW(search(g, SizeProfile{{2, 2}}), ProfileMismatch);
    EXPECT_THROW(search(g, SizeProfile{{}}), ProfileMismatch);
    EXPECT_THROW(search(g, SizeProfile{{0, 6}}), ProfileMismatch);
    EXPECT_THROW(enumerate_all(g, SizeProfile{{4}}), ProfileMismatch);
    EXPECT_THROW(brute_force_exists(g, {3, 3}), ProfileMismatch);
}

TEST(Search, SizeOneFactorsAreSearchedNormally) {
    auto g = make_catalog_group("C2xC4");
    auto r = search(g, SizeProfile{{1, 2, 1, 4, 1}});
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.witness->factors[0], (std::vector<ElementId>{0}));
    EXPECT_NO_THROW(verify_certificate(g, *r.witness));
}

TEST(Search, DeterministicRepeats) {
    SearchOptions o;
    o.deterministic = true;
    auto a = run("S4", {4, 3, 2}, o);
    auto b = run("S4", {4, 3, 2}, o);
    ASSERT_TRUE(a.found());
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.nodes_visited, b.nodes_visited);
    EXPECT_TRUE(a.deterministic);
}

TEST(Search, ParallelAgreesOnExistence) {
    SearchOptions par;
    par.threads = 4;
    for (auto [group, sizes] : std::vector<std::pair<const char*, std::vector<int>>>{
             {"A4", {2, 3, 2}}, {"A4", {2, 2, 3}}, {"S4", {2, 3, 4}}, {"C2xD4", {4, 2, 2}}}) {
        auto seq = run(group, sizes);
        auto p = run(group, sizes, par);
        EXPECT_EQ(seq.found(), p.found()) << group;
        EXPECT_FALSE(p.deterministic);
        if (p.found()) {
            EXPECT_NO_THROW(verify_certificate(make_catalog_group(group), *p.witness));
        }
    }
}

TEST(Search, NodeBudget) {
    SearchOptions o;
    o.node_budget = 5;
    o.prunes = PruneSet::none();
    EXPECT_THROW(run("A4", {2, 3, 2}, o), BudgetExceeded);
}

TEST(BruteForce, Examples) {
    auto a4 = make_catalog_group("A4");
    auto r = brute_force_search(a4, {2, 3, 2});
    EXPECT_FALSE(r.exists);
    EXPECT_EQ(r.tuples, std::uint64_t(oracle::binomial(12, 2) * oracle::binomial(12, 3) * oracle::binomial(12, 2)));
    EXPECT_EQ(r.tuples, 958320u);
    EXPECT_TRUE(brute_force_exists(make_catalog_group("C6"), {2, 3}));
    EXPECT_TRUE(brute_force_exists(make_catalog_group("C1"), {1}));
    EXPECT_THROW(brute_force_exists(a4, {2, 3, 2}, 1000), BudgetExceeded);
}

TEST(EnumerateAll, Examples) {
    auto c2 = make_catalog_group("C2");
    auto one = enumerate_all(c2, SizeProfile{{2}});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].factors[0], (std::vector<ElementId>{0, 1}));

    EXPECT_TRUE(enumerate_all(make_catalog_group("A4"), SizeProfile{{2, 3, 2}}).empty());
}

TEST(EnumerateAll, CyclicFourMatchesBruteForce) {
    auto c4 = make_catalog_group("C4");
    auto all = brute_force_enumerate(c4, {2, 2});
    std::vector<std::vector<std::vector<int>>> normalized;
    for (const auto& f : all)
        if (std::all_of(f.begin(), f.end(), [](const auto& s) { return s.front() == 0; })) normalized.push_back(f);

    SearchOptions o;
    auto got = enumerate_all(c4, SizeProfile{{2, 2}}, o);
    ASSERT_EQ(got.size(), normalized.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].factors, normalized[i]);

    o.normalize = false;
    auto unnormalized = enumerate_all(c4, SizeProfile{{2, 2}}, o);
    ASSERT_EQ(unnormalized.size(), all.size());
    for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(unnormalized[i].factors, all[i]);
}

TEST(EnumerateAll, ParallelMatchesSequentialOrder) {
    auto g = make_catalog_group("D6");
    SearchOptions par;
    par.threads = 3;
    auto a = enumerate_all(g, SizeProfile{{2, 3, 2}});
    auto b = enumerate_all(g, SizeProfile{{2, 3, 2}}, par);
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.empty());
}

TEST(EnumerateAll, BudgetExceeded) {
    SearchOptions o;
    o.node_budget = 10;
    EXPECT_THROW(enumerate_all(make_catalog_group("C12"), SizeProfile{{2, 3, 2}}, o), BudgetExceeded);
}

TEST(Verify, SearchCertificateRoundTrips) {
    auto g = make_catalog_group("C2xC6");
    auto r = search(g, SizeProfile{{3, 2, 2}});
    ASSERT_TRUE(r.found());
    auto reports = verify_certificate(g, *r.witness);
    EXPECT_FALSE(reports.empty());
    for (const auto& rep : reports) EXPECT_TRUE(rep.holds);
}

TEST(Verify, MutatedCertificateFails) {
    auto g = make_catalog_group("C6");
    auto r = search(g, SizeProfile{{2, 3}});
    ASSERT_TRUE(r.found());
    auto cert = *r.witness;
    // swap one element of the second factor for an unused one until a product repeats
    bool mutated = false;
    for (ElementId x = 0; x < g.order() && !mutated; ++x) {
        auto& f = cert.factors[1];
        if (std::find(f.begin(), f.end(), x) != f.end()) continue;
        auto candidate = cert;
        candidate.factors[1].back() = x;
        std::sort(candidate.factors[1].begin(), candidate.factors[1].end());
        std::vector<oracle::Set> sets;
        for (auto& s : candidate.factors) sets.emplace_back(s.begin(), s.end());
        if (!oracle::is_factorization(g, sets)) {
            cert = candidate;
            mutated = true;
        }
    }
    ASSERT_TRUE(mutated);
    try {
        verify_certificate(g, cert);
        FAIL();
    } catch (const BadCertificate& e) {
        EXPECT_EQ(e.check(), "is_factorization");
    }
}

TEST(Verify, WrongSizeAndWrongGroup) {
    auto g = make_catalog_group("C6");
    FactorizationCertificate cert{"C6", {2, 3}, {{0, 3}, {0, 2, 4}}};
    EXPECT_NO_THROW(verify_certificate(g, cert));

    auto bad_size = cert;
    bad_size.sizes = {3, 2};
    try {
        verify_certificate(g, bad_size);
        FAIL();
    } catch (const BadCertificate& e) {
        EXPECT_EQ(e.check(), "sizes");
    }

    auto repeated = cert;
    repeated.factors[1] = {0, 2, 2};
    EXPECT_THROW(verify_certificate(g, repeated), BadCertificate);

    try {
        verify_certificate(make_catalog_group("C2xC3"), cert);
        FAIL();
    } catch (const BadCertificate& e) {
        EXPECT_EQ(e.check(), "group");
    }
}

TEST(Profiles, OrderedProfiles) {
    auto p = ordered_profiles(12, 2);
    ASSERT_EQ(p.size(), 6u);
    EXPECT_EQ(p.front().sizes, (std::vector<int>{1, 12}));
    EXPECT_EQ(p.back().sizes, (std::vector<int>{12, 1}));
    EXPECT_EQ(ordered_profiles(12, 3).size(), 18u);
    EXPECT_EQ(ordered_profiles(7, 1).size(), 1u);
    EXPECT_EQ(SizeProfile::parse("2, 3,2").sizes, (std::vector<int>{2, 3, 2}));
    EXPECT_THROW(SizeProfile::parse("2,x"), InvalidArgument);
    EXPECT_THROW(PruneSet::parse("div9"), InvalidArgument);
    EXPECT_EQ(PruneSet::parse("div2,prefix"), (PruneSet{true, true, false}));
}
