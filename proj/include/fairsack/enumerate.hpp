#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fairsack/construct.hpp"
#include "fairsack/decompose.hpp"
#include "fairsack/errors.hpp"
#include "fairsack/sumset.hpp"
#include "fairsack/verify.hpp"

namespace fairsack {

// Every way to write n as an ordered product of factors >= 2, in
// lexicographic order. n = 1 has exactly the empty factorization.
inline std::vector<OrderedFactorization> ordered_factorizations(Exponent n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    std::vector<Exponent> divisors;
    for (Exponent d = 2; d <= n / d; ++d)
        if (n % d == 0) {
            divisors.push_back(d);
            if (d != n / d) divisors.push_back(n / d);
        }
    if (n >= 2) divisors.push_back(n);
    std::sort(divisors.begin(), divisors.end());

    std::vector<OrderedFactorization> out;
    std::vector<Exponent> prefix;
    auto rec = [&](auto&& self, Exponent m) -> void {
        if (m == 1) {
            out.emplace_back(prefix);
            return;
        }
        for (Exponent d : divisors) {
            if (d > m) break;
            if (m % d != 0) continue;
            prefix.push_back(d);
            self(self, m / d);
            prefix.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

// Set partitions of {1..l} with no block holding two consecutive
// integers, ordered by their restricted growth strings. There are
// Bell(l-1) of them.
inline std::vector<IntervalPartition> interval_free_partitions(std::size_t l) {
    std::vector<IntervalPartition> out;
    std::vector<int> rgs(l, 0);
    auto rec = [&](auto&& self, std::size_t i, int used) -> void {
        if (i == l) {
            out.push_back(IntervalPartition::from_assignment(rgs));
            return;
        }
        for (int g = 0; g <= used; ++g) {
            if (i > 0 && rgs[i - 1] == g) continue;
            rgs[i] = g;
            self(self, i + 1, std::max(used, g + 1));
        }
    };
    rec(rec, 0, 0);
    return out;
}

/*
 * One fair sack as the enumeration sees it: the dice, the canonical
 * interval-free pair that generates them, and every generating pair
 * encountered (exactly one, but recorded rather than assumed).
 */
struct EnumeratedSack {
    OrderedFactorization a;
    IntervalPartition blocks;
    Sack sack;
    std::vector<std::pair<OrderedFactorization, IntervalPartition>> producers;
};

struct EnumerationResult {
    Exponent t = 0;
    std::vector<EnumeratedSack> sacks;      // sorted by (a, blocks)
    std::size_t factorization_count = 0;    // ordered factorizations of t+1
    std::size_t pair_count = 0;             // interval-free pairs tried
};

/*
 * All fair sacks with total t: every interval-free pair (a, p) over the
 * ordered factorizations of t+1, turned into a sack and deduplicated by
 * dice multiset. Every sack is verified fair before it is admitted. jobs
 * > 1 spreads the factorizations over that many threads; the result does
 * not depend on jobs.
 */
inline EnumerationResult enumerate_fair_sacks(Exponent t, unsigned jobs = 1) {
    if (t < 0) throw std::invalid_argument("t must be nonnegative");
    EnumerationResult result;
    result.t = t;

    const auto factorizations = ordered_factorizations(checked_add(t, 1));
    result.factorization_count = factorizations.size();

    using Produced = std::pair<IntervalPartition, Sack>;
    std::vector<std::vector<Produced>> per_factorization(factorizations.size());
    auto work = [&](std::size_t begin, std::size_t step) {
        for (std::size_t i = begin; i < factorizations.size(); i += step) {
            for (auto& p : interval_free_partitions(factorizations[i].size())) {
                Sack s = partition_sack(factorizations[i], p);
                per_factorization[i].emplace_back(std::move(p), std::move(s));
            }
        }
    };
    if (jobs <= 1) {
        work(0, 1);
    } else {
        std::vector<std::future<void>> workers;
        for (unsigned j = 0; j < jobs; ++j)
            workers.push_back(std::async(std::launch::async, work, j, jobs));
        for (auto& w : workers) w.get();
    }

    std::map<Sack, std::size_t> seen;
    for (std::size_t i = 0; i < factorizations.size(); ++i) {
        for (auto& [p, s] : per_factorization[i]) {
            ++result.pair_count;
            Sack key = s.canonical();
            auto it = seen.find(key);
            if (it == seen.end()) {
                FairnessReport fr = check_fair(key);
                if (!fr.fair)
                    throw NotFairError("generated sack failed verification");
                auto [ca, cp] = decompose_sack(key);
                it = seen.emplace(key, result.sacks.size()).first;
                result.sacks.push_back(EnumeratedSack{
                    std::move(ca), std::move(cp), std::move(key), {}});
            }
            result.sacks[it->second].producers.emplace_back(factorizations[i], std::move(p));
        }
    }

    std::sort(result.sacks.begin(), result.sacks.end(),
              [](const EnumeratedSack& x, const EnumeratedSack& y) {
                  if (x.a != y.a) return x.a < y.a;
                  return x.blocks < y.blocks;
              });
    return result;
}

/*
 * Fair sacks found with no structure theory at all: every multiset of
 * >= 2-term supports whose exact sumset product is {0..t}, via the split
 * scan. Exists to check the enumeration against; refuses totals past the
 * bound since the scan is exponential in the worst case.
 */
inline std::vector<Sack> brute_force_fair_sacks(Exponent t, Exponent bound = 36) {
    if (t < 0) throw std::invalid_argument("t must be nonnegative");
    if (checked_add(t, 1) > bound)
        throw BoundExceededError("t+1 exceeds the brute force bound " + std::to_string(bound));
    detail::SplitCache cache;
    std::vector<std::vector<SupportPoly>> factorizations;
    std::vector<SupportPoly> prefix;
    detail::sumset_factorizations(cache, fair_poly(t), false, 0, prefix, factorizations);
    std::vector<Sack> out;
    out.reserve(factorizations.size());
    for (auto& dice : factorizations) out.emplace_back(std::move(dice));
    std::sort(out.begin(), out.end());
    return out;
}

// Number of fair sacks with total t, by the bijection with interval-free
// pairs: the sum of Bell(l-1) over ordered factorizations of length l.
inline mpz_class count_fair_sacks(Exponent t) {
    if (t < 0) throw std::invalid_argument("t must be nonnegative");
    std::size_t longest = 0;
    std::vector<mpz_class> bell{1}; // Bell(0)
    std::vector<std::size_t> lengths;
    for (const auto& a : ordered_factorizations(checked_add(t, 1))) {
        lengths.push_back(a.size());
        longest = std::max(longest, a.size());
    }
    // Bell triangle
    std::vector<mpz_class> row{1};
    while (bell.size() < longest) {
        std::vector<mpz_class> next{row.back()};
        for (const mpz_class& v : row) next.push_back(next.back() + v);
        row = std::move(next);
        bell.push_back(row.front());
    }
    mpz_class total = 0;
    for (std::size_t l : lengths)
        total += l == 0 ? mpz_class(1) : bell[l - 1];
    return total;
}

} // namespace fairsack
