#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "group_table.hpp"
#include "lemma_oracles.hpp"
#include "subset_algebra.hpp"

namespace factorsearch {

/// Ordered factor sizes (n₁, …, n_k). Never sorted or canonicalized: the
/// existence of a factorization depends on the order.
struct SizeProfile {
    std::vector<int> sizes;

    int k() const noexcept { return int(sizes.size()); }

    long long product() const {
        long long p = 1;
        for (int s : sizes) p = std::min(p * s, 1LL << 40);
        return p;
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(sizes[i]);
        }
        return out;
    }

    /// Parses "n1,n2,...".
    static SizeProfile parse(const std::string& text) {
        SizeProfile p;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(item, &used);
            } catch (const std::exception&) {
                throw InvalidArgument("bad size '" + item + "' in profile '" + text + "'");
            }
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size()) throw InvalidArgument("bad size '" + item + "' in profile '" + text + "'");
            p.sizes.push_back(v);
        }
        if (p.sizes.empty()) throw InvalidArgument("empty size profile");
        return p;
    }

    friend bool operator==(const SizeProfile&, const SizeProfile&) = default;
    friend auto operator<=>(const SizeProfile&, const SizeProfile&) = default;
};

/// All ordered k-tuples of positive integers with product n, in lexicographic order.
inline std::vector<SizeProfile> ordered_profiles(int n, int k) {
    std::vector<SizeProfile> out;
    std::vector<int> current;
    std::function<void(int)> rec = [&](int rest) {
        if (int(current.size()) == k - 1) {
            current.push_back(rest);
            out.push_back(SizeProfile{current});
            current.pop_back();
            return;
        }
        for (int d = 1; d <= rest; ++d) {
            if (rest % d) continue;
            current.push_back(d);
            rec(rest / d);
            current.pop_back();
        }
    };
    if (k >= 1) rec(n);
    return out;
}

struct FactorizationCertificate {
    std::string group;
    std::vector<int> sizes;
    std::vector<std::vector<ElementId>> factors;

    std::vector<SubsetMask> masks() const {
        std::vector<SubsetMask> out;
        for (const auto& f : factors) out.push_back(SubsetMask::from_list(f));
        return out;
    }

    friend bool operator==(const FactorizationCertificate&, const FactorizationCertificate&) = default;
};

inline FactorizationCertificate make_certificate(const GroupTable& g, const SizeProfile& profile,
                                                 std::span<const SubsetMask> factors) {
    FactorizationCertificate c{g.name(), profile.sizes, {}};
    for (const auto& f : factors) c.factors.push_back(f.to_vector());
    return c;
}

/// Which lemma-based prunes the search may apply.
struct PruneSet {
    bool prefix_div = true;
    bool div2 = true;
    bool div3 = true;

    static PruneSet all() { return {}; }
    static PruneSet none() { return {false, false, false}; }

    /// "all", "none", or a comma-separated subset of "prefix", "div2", "div3".
    static PruneSet parse(const std::string& text) {
        if (text == "all") return all();
        if (text == "none" || text.empty()) return none();
        PruneSet p = none();
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "prefix" || item == "prefix_div") p.prefix_div = true;
            else if (item == "div2") p.div2 = true;
            else if (item == "div3") p.div3 = true;
            else throw InvalidArgument("unknown prune '" + item + "' (expected prefix, div2, div3, all, none)");
        }
        return p;
    }

    std::string to_string() const {
        std::string out;
        auto add = [&](bool on, const char* name) {
            if (!on) return;
            if (!out.empty()) out += ',';
            out += name;
        };
        add(prefix_div, "prefix");
        add(div2, "div2");
        add(div3, "div3");
        return out.empty() ? "none" : out;
    }

    friend bool operator==(const PruneSet&, const PruneSet&) = default;
};

struct SearchOptions {
    /// Restrict every factor to subsets containing the identity.
    bool normalize = true;
    PruneSet prunes{};
    /// Forces a sequential run so the witness is reproducible.
    bool deterministic = false;
    int threads = 1;
    /// Maximum number of candidate factors examined; 0 means unlimited.
    std::uint64_t node_budget = 0;
};

struct PruneStats {
    /// Partial factors rejected because the running product stopped being injective.
    std::uint64_t injectivity = 0;
    /// Last-position branches where some uncovered element could no longer be reached.
    std::uint64_t coverage = 0;
    std::uint64_t prefix_div = 0;
    std::uint64_t div2 = 0;
    std::uint64_t div3 = 0;

    PruneStats& operator+=(const PruneStats& o) {
        injectivity += o.injectivity;
        coverage += o.coverage;
        prefix_div += o.prefix_div;
        div2 += o.div2;
        div3 += o.div3;
        return *this;
    }
};

struct SearchReport {
    std::optional<FactorizationCertificate> witness;
    /// Complete candidate factors examined, in total and per position.
    std::uint64_t nodes_visited = 0;
    std::vector<std::uint64_t> nodes_by_position;
    PruneStats pruned;
    bool normalized = true;
    bool deterministic = true;
    double elapsed_ms = 0;
    SearchOptions options;
    std::string group;
    SizeProfile profile;

    bool found() const noexcept { return witness.has_value(); }
};

namespace detail {

inline void check_profile(const GroupTable& g, const SizeProfile& profile) {
    if (profile.sizes.empty()) throw ProfileMismatch("empty size profile");
    for (int s : profile.sizes)
        if (s < 1) throw ProfileMismatch("factor sizes must be positive, got " + std::to_string(s));
    if (profile.product() != g.order())
        throw ProfileMismatch("product of sizes " + profile.to_string() + " is " +
                              std::to_string(profile.product()) + ", group order is " +
                              std::to_string(g.order()));
}

/// Depth-first enumeration of factorizations. Candidates at each position are
/// generated in ascending lexicographic order of their sorted element lists.
class Searcher {
public:
    using Visitor = std::function<bool(std::span<const SubsetMask>)>;  // false stops the search

    Searcher(const GroupTable& g, const SizeProfile& profile, const SearchOptions& options,
             const std::atomic<bool>* stop = nullptr)
        : g_(g), sizes_(profile.sizes), options_(options), k_(profile.k()), stop_(stop),
          translations_(std::size_t(k_), std::vector<SubsetMask>(std::size_t(g.order()))),
          chosen_(std::size_t(k_)), nodes_by_position_(std::size_t(k_), 0) {}

    /// Enumerates all candidates for position 1 that survive its prunes.
    std::vector<SubsetMask> first_position_candidates() {
        std::vector<SubsetMask> out;
        collect_first_ = &out;
        run_position(0, SubsetMask{0});
        collect_first_ = nullptr;
        return out;
    }

    /// Continues the search below a position-1 candidate that already passed its prunes.
    bool run_below(const SubsetMask& first) {
        chosen_[0] = first;
        if (k_ == 1) return visitor_(std::span<const SubsetMask>(chosen_));
        return run_position(1, first);
    }

    /// Runs the whole search; returns false if the visitor stopped it.
    bool run() { return run_position(0, SubsetMask{0}); }

    void set_visitor(Visitor v) { visitor_ = std::move(v); }

    std::uint64_t nodes() const noexcept { return nodes_; }
    const std::vector<std::uint64_t>& nodes_by_position() const noexcept { return nodes_by_position_; }
    const PruneStats& stats() const noexcept { return stats_; }

private:
    bool stopped() const { return stop_ && stop_->load(std::memory_order_relaxed); }

    /// prefix is the (injective) support of A₁⋯A_{pos}; {e} at pos 0.
    bool run_position(int pos, const SubsetMask& prefix) {
        auto& tr = translations_[std::size_t(pos)];
        for (ElementId b = 0; b < g_.order(); ++b) tr[std::size_t(b)] = translate_right(g_, prefix, b);
        const int size = sizes_[std::size_t(pos)];
        if (options_.normalize)
            return extend(pos, prefix, SubsetMask{0}, tr[0], 1, size - 1);
        return extend(pos, prefix, SubsetMask{}, SubsetMask{}, 0, size);
    }

    bool extend(int pos, const SubsetMask& prefix, const SubsetMask& factor, const SubsetMask& product,
                ElementId next, int remaining) {
        if (stopped()) return false;
        if (remaining == 0) return complete(pos, prefix, factor, product);
        const auto& tr = translations_[std::size_t(pos)];
        const bool last = pos == k_ - 1;
        for (ElementId b = next; b + remaining <= g_.order(); ++b) {
            const SubsetMask& shifted = tr[std::size_t(b)];
            if (shifted.intersects(product)) {
                ++stats_.injectivity;
                continue;
            }
            SubsetMask f = factor;
            f.set(b);
            SubsetMask p = product | shifted;
            if (last && remaining > 1 && !coverable(pos, prefix, p, b)) {
                ++stats_.coverage;
                continue;
            }
            if (!extend(pos, prefix, f, p, b + 1, remaining - 1)) return false;
        }
        return true;
    }

    /// At the last position every uncovered element x must still be reachable
    /// as prefix·b' for some b' > last_chosen whose translate is disjoint from
    /// the product so far. Checks the smallest uncovered element.
    bool coverable(int pos, const SubsetMask& prefix, const SubsetMask& product, ElementId last_chosen) const {
        ElementId x = -1;
        for (ElementId y = 0; y < g_.order(); ++y)
            if (!product.test(y)) {
                x = y;
                break;
            }
        if (x < 0) return true;
        const auto& tr = translations_[std::size_t(pos)];
        bool ok = false;
        prefix.for_each([&](ElementId p) {
            if (ok) return;
            ElementId b = g_.multiply(g_.inverse(p), x);
            if (b > last_chosen && !tr[std::size_t(b)].intersects(product)) ok = true;
        });
        return ok;
    }

    bool complete(int pos, const SubsetMask& prefix, const SubsetMask& factor, const SubsetMask& product) {
        ++nodes_;
        ++nodes_by_position_[std::size_t(pos)];
        if (options_.node_budget && nodes_ > options_.node_budget)
            throw BudgetExceeded("search exceeded node budget of " + std::to_string(options_.node_budget));
        const int size = sizes_[std::size_t(pos)];
        const bool last = pos == k_ - 1;

        if (options_.prunes.div2) {
            if (!div2_bound(g_, factor, pos + 1, k_).holds) {
                ++stats_.div2;
                return true;
            }
        }
        if (options_.prunes.div3 && pos > 0 && !last) {
            Subgroup h = subgroup_closure(g_, factor);
            Subgroup before = subgroup_closure(g_, prefix);
            if (conjugate_closure_by_subgroup(g_, h, before).order() % size != 0) {
                ++stats_.div3;
                return true;
            }
        }
        if (options_.prunes.prefix_div && !last) {
            if (subgroup_closure(g_, product).order() % product.card() != 0) {
                ++stats_.prefix_div;
                return true;
            }
        }
        chosen_[std::size_t(pos)] = factor;
        if (pos == 0 && collect_first_) {
            collect_first_->push_back(factor);
            return true;
        }
        if (last) {
            if (product.card() != g_.order()) throw Error("internal: complete product does not cover group");
            return visitor_(std::span<const SubsetMask>(chosen_));
        }
        return run_position(pos + 1, product);
    }

    const GroupTable& g_;
    std::vector<int> sizes_;
    SearchOptions options_;
    int k_;
    const std::atomic<bool>* stop_;
    std::vector<std::vector<SubsetMask>> translations_;
    std::vector<SubsetMask> chosen_;
    std::vector<SubsetMask>* collect_first_ = nullptr;
    Visitor visitor_;
    std::uint64_t nodes_ = 0;
    std::vector<std::uint64_t> nodes_by_position_;
    PruneStats stats_;
};

/// Runs the searcher, in parallel over position-1 candidates when requested.
/// The visitor may be called concurrently from several threads in parallel mode.
inline void drive(const GroupTable& g, const SizeProfile& profile, const SearchOptions& options,
                  const std::function<bool(std::size_t, std::span<const SubsetMask>)>& visit,
                  SearchReport& report) {
    const int threads = options.deterministic ? 1 : std::max(1, options.threads);
    report.deterministic = threads == 1;
    report.nodes_by_position.assign(std::size_t(profile.k()), 0);
    auto merge = [&](const Searcher& s) {
        report.nodes_visited += s.nodes();
        for (std::size_t i = 0; i < s.nodes_by_position().size(); ++i)
            report.nodes_by_position[i] += s.nodes_by_position()[i];
        report.pruned += s.stats();
    };

    if (threads == 1) {
        Searcher s(g, profile, options);
        s.set_visitor([&](std::span<const SubsetMask> f) { return visit(0, f); });
        s.run();
        merge(s);
        return;
    }

    Searcher root(g, profile, options);
    std::vector<SubsetMask> firsts = root.first_position_candidates();
    merge(root);
    // position-1 nodes were already counted by root
    std::atomic<bool> stop{false};
    std::atomic<std::size_t> next{0};
    std::mutex mutex;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            Searcher s(g, profile, options, &stop);
            try {
                while (!stop.load()) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= firsts.size()) break;
                    s.set_visitor([&, i](std::span<const SubsetMask> f) {
                        if (!visit(i, f)) {
                            stop = true;
                            return false;
                        }
                        return true;
                    });
                    if (!s.run_below(firsts[i])) break;
                }
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
                stop = true;
            }
            std::lock_guard lock(mutex);
            merge(s);
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Searches for a factorization of g with the given ordered sizes. Returns the
/// first witness found, or a report with no witness after exhausting the
/// candidate space under the (sound) active prunes.
inline SearchReport search(const GroupTable& g, const SizeProfile& profile, const SearchOptions& options = {}) {
    detail::check_profile(g, profile);
    auto start = std::chrono::steady_clock::now();
    SearchReport report;
    report.options = options;
    report.normalized = options.normalize;
    report.group = g.name();
    report.profile = profile;
    std::mutex mutex;
    detail::drive(
        g, profile, options,
        [&](std::size_t, std::span<const SubsetMask> factors) {
            std::lock_guard lock(mutex);
            if (!report.witness) report.witness = make_certificate(g, profile, factors);
            return false;
        },
        report);
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Every factorization under the active restriction, sorted in search order.
/// Parallel runs gather per position-1 candidate and concatenate, so the
/// result does not depend on the thread count.
inline std::vector<FactorizationCertificate> enumerate_all(const GroupTable& g, const SizeProfile& profile,
                                                           const SearchOptions& options = {},
                                                           SearchReport* report_out = nullptr) {
    detail::check_profile(g, profile);
    auto start = std::chrono::steady_clock::now();
    SearchReport report;
    report.options = options;
    report.normalized = options.normalize;
    report.group = g.name();
    report.profile = profile;
    std::mutex mutex;
    std::vector<std::pair<std::size_t, FactorizationCertificate>> found;
    std::size_t seq = 0;
    const bool parallel = !options.deterministic && options.threads > 1;
    detail::drive(
        g, profile, options,
        [&](std::size_t first_index, std::span<const SubsetMask> factors) {
            std::lock_guard lock(mutex);
            found.emplace_back(parallel ? first_index : seq++, make_certificate(g, profile, factors));
            return true;
        },
        report);
    // within one position-1 candidate a single thread produced results in order
    std::stable_sort(found.begin(), found.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<FactorizationCertificate> out;
    out.reserve(found.size());
    for (auto& [_, c] : found) out.push_back(std::move(c));
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (report_out) *report_out = std::move(report);
    return out;
}

/// Re-checks a certificate against g: group name, declared sizes,
/// bijectivity, then every lemma report. Throws BadCertificate naming the
/// first failing check.
inline std::vector<LemmaReport> verify_certificate(const GroupTable& g, const FactorizationCertificate& cert) {
    std::string cert_group;
    try {
        cert_group = canonical_spec(cert.group);
    } catch (const Error& e) {
        throw BadCertificate("group", e.what());
    }
    if (cert_group != g.name())
        throw BadCertificate("group", "certificate is for " + cert_group + ", checking against " + g.name());

    if (cert.sizes.size() != cert.factors.size() || cert.factors.empty())
        throw BadCertificate("sizes", std::to_string(cert.sizes.size()) + " sizes declared for " +
                                          std::to_string(cert.factors.size()) + " factors");
    std::vector<SubsetMask> masks;
    for (std::size_t i = 0; i < cert.factors.size(); ++i) {
        const auto& f = cert.factors[i];
        SubsetMask m;
        for (ElementId e : f) {
            if (!g.valid(e))
                throw BadCertificate("sizes", "factor " + std::to_string(i + 1) + " has invalid element " +
                                                  std::to_string(e));
            if (m.test(e))
                throw BadCertificate("sizes", "factor " + std::to_string(i + 1) + " repeats element " +
                                                  std::to_string(e));
            m.set(e);
        }
        if (m.card() != cert.sizes[i] || m.empty())
            throw BadCertificate("sizes", "factor " + std::to_string(i + 1) + " has " + std::to_string(m.card()) +
                                              " elements, declared " + std::to_string(cert.sizes[i]));
        masks.push_back(m);
    }
    if (SizeProfile{cert.sizes}.product() != g.order())
        throw BadCertificate("sizes", "declared sizes do not multiply to the group order");
    if (!is_factorization(g, masks)) throw BadCertificate("is_factorization", "multiplication map is not bijective");

    auto reports = all_lemma_reports(g, masks);
    for (const auto& r : reports)
        if (!r.holds)
            throw BadCertificate(to_string(r.lemma), "position " + std::to_string(r.position) + ": " +
                                                         std::to_string(r.divisor) + " does not divide " +
                                                         std::to_string(r.bound) +
                                                         (r.variant.empty() ? "" : " (" + r.variant + ")"));
    return reports;
}

}  // namespace factorsearch
