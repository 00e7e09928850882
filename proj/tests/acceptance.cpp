// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// the number of failures.

#include <factorsearch/factorsearch.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

using namespace factorsearch;

namespace {

constexpr double kA4SearchSeconds = 1.0;
constexpr double kA4BruteSeconds = 60.0;
constexpr std::uint64_t kA4LeafBound = 11u * 55u * 11u;
constexpr std::uint64_t kA4TupleBound = 958320;
constexpr int kEquivalenceMaxOrder = 16;
constexpr int kEquivalenceMaxK = 3;
constexpr double kGapSeconds = 1.0;
constexpr double kAtlasSeconds = 300.0;
constexpr int kAtlasMaxOrder = 24;
constexpr int kQA2MaxOrder = 12;
constexpr int kRandomTrials = 200;
constexpr std::uint64_t kSeed = 20240519;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* name, const std::function<std::string(bool&)>& body) {
    bool ok = true;
    std::string detail;
    try {
        detail = body(ok);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    failures += !ok;
    std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
}

bool all_reports_hold(const GroupTable& g, const FactorizationCertificate& c) {
    for (const auto& r : verify_certificate(g, c))
        if (!r.holds) return false;
    return true;
}

// independent subgroup order: repeated products until nothing new appears
std::size_t closure_size(const GroupTable& g, std::set<int> s) {
    s.insert(0);
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<int> v(s.begin(), s.end());
        for (int x : v)
            for (int y : v) grew |= s.insert(g.multiply(x, y)).second;
    }
    return s.size();
}

const std::vector<PruneSet> kPruneConfigs{PruneSet::none(), PruneSet{true, false, false}, PruneSet{false, true, false},
                                          PruneSet{false, false, true}, PruneSet::all()};

}  // namespace

int main() {
    std::vector<FactorizationCertificate> found;

    criterion(1, "A4 (2,3,2) has no factorization", [](bool& ok) {
        auto g = make_catalog_group("A4");
        auto t0 = Clock::now();
        auto r = search(g, SizeProfile{{2, 3, 2}});
        double search_s = seconds_since(t0);
        t0 = Clock::now();
        auto brute = brute_force_search(g, {2, 3, 2});
        double brute_s = seconds_since(t0);
        ok = !r.found() && r.nodes_by_position[2] <= kA4LeafBound && search_s < kA4SearchSeconds && !brute.exists &&
             brute.tuples <= kA4TupleBound && brute_s < kA4BruteSeconds;
        char buf[256];
        std::snprintf(buf, sizeof buf, "search %s, %llu nodes, %.3fs; brute force %s over %llu tuples, %.2fs",
                      r.found() ? "WITNESS" : "NONE", (unsigned long long)r.nodes_visited, search_s,
                      brute.exists ? "exists" : "none", (unsigned long long)brute.tuples, brute_s);
        return std::string(buf);
    });

    criterion(2, "A4 (2,2,3) and (3,2,2) have verified witnesses", [](bool& ok) {
        auto g = make_catalog_group("A4");
        std::string detail;
        for (std::vector<int> sizes : {std::vector<int>{2, 2, 3}, std::vector<int>{3, 2, 2}}) {
            auto r = search(g, SizeProfile{sizes});
            bool good = r.found() && all_reports_hold(g, *r.witness);
            ok = ok && good;
            detail += SizeProfile{sizes}.to_string() + (good ? " verified " : " missing ");
        }
        return detail;
    });

    criterion(3, "search agrees with brute force for order <= 16, k <= 3", [&found](bool& ok) {
        int cases = 0, disagreements = 0;
        for (const auto& spec : catalog_up_to(kEquivalenceMaxOrder)) {
            auto g = make_catalog_group(spec);
            for (int k = 1; k <= kEquivalenceMaxK; ++k)
                for (const auto& profile : ordered_profiles(g.order(), k)) {
                    bool truth = brute_force_exists(g, profile.sizes);
                    ++cases;
                    for (const auto& prunes : kPruneConfigs) {
                        SearchOptions o;
                        o.prunes = prunes;
                        auto r = search(g, profile, o);
                        disagreements += r.found() != truth;
                        if (r.found()) found.push_back(*r.witness);
                    }
                }
        }
        ok = disagreements == 0 && cases > 0;
        return std::to_string(cases) + " cases x " + std::to_string(kPruneConfigs.size()) + " prune sets, " +
               std::to_string(disagreements) + " disagreements";
    });

    criterion(4, "lemma checks hold on every factorization found", [&found](bool& ok) {
        std::uint64_t checked = 0, bad = 0;
        for (const auto& c : found) {
            bad += !all_reports_hold(make_catalog_group(c.group), c);
            ++checked;
        }
        std::mt19937_64 rng(kSeed);
        int translated_bad = 0, quotient_bad = 0;
        for (const char* spec : {"A4", "D6", "S4", "C2xC6"}) {
            auto g = make_catalog_group(spec);
            std::vector<FactorizationCertificate> all;
            for (const auto& p : ordered_profiles(g.order(), 3))
                for (auto& c : enumerate_all(g, p)) all.push_back(std::move(c));
            for (int t = 0; t < kRandomTrials / 4; ++t) {
                auto f = all[rng() % all.size()].masks();
                std::vector<ElementId> shifts(f.size() + 1);
                for (auto& s : shifts) s = ElementId(rng() % std::uint64_t(g.order()));
                std::vector<SubsetMask> moved;
                for (std::size_t i = 0; i < f.size(); ++i)
                    moved.push_back(translate_right(g, translate_left(g, g.inverse(shifts[i]), f[i]), shifts[i + 1]));
                translated_bad += !is_factorization(g, moved);
                auto normalized = normalize_factorization(g, moved);
                bool has_e = true;
                for (const auto& a : normalized) has_e = has_e && a.contains_identity();
                translated_bad += !has_e || !is_factorization(g, normalized);

                std::set<int> s, left, right;
                for (int i = 0, n = 1 + int(rng() % 6); i < n; ++i) s.insert(int(rng() % std::uint64_t(g.order())));
                for (int x : s)
                    for (int y : s) {
                        left.insert(g.multiply(g.inverse(x), y));
                        right.insert(g.multiply(x, g.inverse(y)));
                    }
                quotient_bad += closure_size(g, left) != closure_size(g, right);
            }
        }
        ok = bad == 0 && translated_bad == 0 && quotient_bad == 0;
        return std::to_string(checked) + " witnesses checked, " + std::to_string(bad) + " bad; " +
               std::to_string(kRandomTrials) + " translation trials, " + std::to_string(translated_bad) +
               " bad; quotient closure mismatches " + std::to_string(quotient_bad);
    });

    criterion(5, "A4 structure", [](bool& ok) {
        auto g = make_catalog_group("A4");
        std::vector<int> involutions;
        int order3 = 0;
        for (int a = 1; a < 12; ++a) {
            int o = 1;
            for (int x = a; x != 0; x = g.multiply(x, a)) ++o;
            if (o == 2) involutions.push_back(a);
            if (o == 3) ++order3;
        }
        std::set<int> v{0};
        v.insert(involutions.begin(), involutions.end());
        bool closed = true, normal = true;
        for (int x : v)
            for (int y : v) closed = closed && v.count(g.multiply(x, y));
        for (int h = 0; h < 12; ++h)
            for (int x : v) normal = normal && v.count(g.multiply(g.multiply(h, x), g.inverse(h)));
        int c = -1;
        for (int a = 1; a < 12 && c < 0; ++a)
            if (a != 0 && !v.count(a)) c = a;
        bool three_cycle = involutions.size() == 3;
        if (three_cycle) {
            std::vector<int> image;
            for (int x : involutions) image.push_back(g.multiply(g.multiply(c, x), g.inverse(c)));
            for (std::size_t i = 0; i < 3; ++i) three_cycle = three_cycle && image[i] != involutions[i];
            std::set<int> img(image.begin(), image.end());
            three_cycle = three_cycle && img == std::set<int>(involutions.begin(), involutions.end());
        }
        ok = involutions.size() == 3 && order3 == 8 && closed && normal && three_cycle;
        return std::to_string(involutions.size()) + " involutions, " + std::to_string(order3) +
               " elements of order 3, Klein subgroup " + (closed && normal ? "normal" : "not normal") +
               ", conjugation " + (three_cycle ? "cycles" : "does not cycle") + " the order-2 subgroups";
    });

    criterion(6, "A5 point stabilizer gap", [](bool& ok) {
        auto t0 = Clock::now();
        auto report = demo_div3_gap();
        double s = seconds_since(t0);
        const Div3GapCase* a5 = nullptr;
        for (const auto& c : report.cases)
            if (c.group == "A5") a5 = &c;
        ok = a5 && a5->is_factorization && a5->card_a2 == 12 && a5->m_order == 12 && a5->m_prime_order == 60 &&
             a5->m_order % 12 == 0 && a5->m_prime_order % 12 == 0 && s < kGapSeconds;
        char buf[160];
        std::snprintf(buf, sizeof buf, "M=%d, M'=%d, |A2|=%d, %.3fs", a5 ? a5->m_order : 0,
                      a5 ? a5->m_prime_order : 0, a5 ? a5->card_a2 : 0, s);
        return std::string(buf);
    });

    criterion(7, "two-fold atlas up to order 24", [](bool& ok) {
        auto t0 = Clock::now();
        auto rows = run_atlas(catalog_up_to(kAtlasMaxOrder), {2});
        double s = seconds_since(t0);
        int missing = 0;
        for (const auto& r : rows) missing += !r.exists();
        ok = missing == 0 && !rows.empty() && s < kAtlasSeconds;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%zu rows, %d without a factorization, %.2fs", rows.size(), missing, s);
        return std::string(buf);
    });

    criterion(8, "Q.A2 sweep up to order 12", [](bool& ok) {
        auto r = explore_qa2(catalog_up_to(kQA2MaxOrder));
        std::uint64_t inconsistent = 0, violations = 0;
        for (const auto& f : r.findings) {
            inconsistent += f.divides != (f.closure_order % f.card_a2 == 0);
            violations += !f.divides;
        }
        ok = r.summary.skipped.empty() && inconsistent == 0 && violations == r.summary.violations &&
             r.summary.factorizations_checked == r.findings.size();
        return std::to_string(r.summary.groups) + " groups, " + std::to_string(r.summary.factorizations_checked) +
               " factorizations, " + std::to_string(r.summary.violations) + " where |A2| does not divide |<A2>|, " +
               std::to_string(r.summary.skipped.size()) + " skipped";
    });

    return failures;
}
