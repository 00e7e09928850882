#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "group_table.hpp"

// Reference oracle for the search engine. It shares nothing with the search
// beyond GroupTable::multiply: no masks, no normalization, no lemma prunes.
// Subsets are plain sorted index vectors and products are recomputed from
// scratch for every prefix.

namespace factorsearch {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// FACTORSEARCH_BUDGET when set to a positive integer, otherwise kDefaultBudget.
inline std::uint64_t budget_from_env() {
    if (const char* v = std::getenv("FACTORSEARCH_BUDGET")) {
        char* end = nullptr;
        unsigned long long b = std::strtoull(v, &end, 10);
        if (end && *end == '\0' && b > 0) return b;
    }
    return kDefaultBudget;
}

/// ∏ C(n, n_i), the number of subset tuples plain enumeration may visit.
inline long double brute_force_tuple_count(int order, const std::vector<int>& sizes) {
    long double total = 1;
    for (int s : sizes) {
        long double c = 1;
        for (int i = 0; i < s; ++i) c = c * (order - i) / (i + 1);
        total *= c;
    }
    return total;
}

namespace detail {

class BruteForce {
public:
    using Visit = std::function<bool(const std::vector<std::vector<int>>&)>;

    BruteForce(const GroupTable& g, std::vector<int> sizes, Visit visit)
        : g_(g), sizes_(std::move(sizes)), visit_(std::move(visit)), chosen_(sizes_.size()) {}

    bool run() { return position(0, std::vector<int>{0}); }

    std::uint64_t tuples() const noexcept { return tuples_; }

private:
    // products: all products of the chosen prefix, pairwise distinct
    bool position(std::size_t pos, const std::vector<int>& products) {
        if (pos == sizes_.size()) {
            ++tuples_;
            if (int(products.size()) != g_.order()) return true;
            return visit_(chosen_);
        }
        std::vector<int> subset;
        return subsets(pos, products, subset, 0);
    }

    bool subsets(std::size_t pos, const std::vector<int>& products, std::vector<int>& subset, int next) {
        const int need = sizes_[pos] - int(subset.size());
        if (need == 0) {
            std::vector<int> extended;
            std::vector<char> seen(std::size_t(g_.order()), 0);
            for (int x : products)
                for (int s : subset) {
                    int y = g_.multiply(x, s);
                    if (seen[std::size_t(y)]) {
                        // some extension was skipped; count what the full tuple loop would see
                        tuples_ += remaining_tuples(pos + 1);
                        return true;
                    }
                    seen[std::size_t(y)] = 1;
                    extended.push_back(y);
                }
            chosen_[pos] = subset;
            return position(pos + 1, extended);
        }
        for (int e = next; e + need <= g_.order(); ++e) {
            subset.push_back(e);
            bool go_on = subsets(pos, products, subset, e + 1);
            subset.pop_back();
            if (!go_on) return false;
        }
        return true;
    }

    std::uint64_t remaining_tuples(std::size_t from) const {
        std::vector<int> rest(sizes_.begin() + long(from), sizes_.end());
        return static_cast<std::uint64_t>(brute_force_tuple_count(g_.order(), rest));
    }

    const GroupTable& g_;
    std::vector<int> sizes_;
    Visit visit_;
    std::vector<std::vector<int>> chosen_;
    std::uint64_t tuples_ = 0;
};

inline void brute_force_guard(const GroupTable& g, const std::vector<int>& sizes, std::uint64_t budget) {
    long long product = 1;
    for (int s : sizes) {
        if (s < 1) throw ProfileMismatch("factor sizes must be positive");
        product *= s;
        if (product > g.order()) break;
    }
    if (sizes.empty() || product != g.order())
        throw ProfileMismatch("sizes do not multiply to the group order " + std::to_string(g.order()));
    long double count = brute_force_tuple_count(g.order(), sizes);
    if (count > static_cast<long double>(budget))
        throw BudgetExceeded("brute force would visit " + std::to_string(static_cast<double>(count)) +
                             " tuples, budget " + std::to_string(budget));
}

}  // namespace detail

struct BruteForceResult {
    bool exists = false;
    /// Subset tuples accounted for (visited, or skipped in bulk below a non-injective prefix).
    std::uint64_t tuples = 0;
};

/// Plain enumeration of all subset tuples with the given sizes; true iff some
/// tuple is a factorization. Throws BudgetExceeded when ∏ C(|G|, n_i) > budget.
inline BruteForceResult brute_force_search(const GroupTable& g, const std::vector<int>& sizes,
                                           std::uint64_t budget = kDefaultBudget) {
    detail::brute_force_guard(g, sizes, budget);
    BruteForceResult r;
    detail::BruteForce bf(g, sizes, [&](const auto&) {
        r.exists = true;
        return false;
    });
    bf.run();
    r.tuples = bf.tuples();
    return r;
}

inline bool brute_force_exists(const GroupTable& g, const std::vector<int>& sizes,
                               std::uint64_t budget = kDefaultBudget) {
    return brute_force_search(g, sizes, budget).exists;
}

/// Every factorization with the given sizes, as sorted element lists, in
/// lexicographic order.
inline std::vector<std::vector<std::vector<int>>> brute_force_enumerate(const GroupTable& g,
                                                                        const std::vector<int>& sizes,
                                                                        std::uint64_t budget = kDefaultBudget) {
    detail::brute_force_guard(g, sizes, budget);
    std::vector<std::vector<std::vector<int>>> out;
    detail::BruteForce bf(g, sizes, [&](const auto& f) {
        out.push_back(f);
        return true;
    });
    bf.run();
    return out;
}

}  // namespace factorsearch
