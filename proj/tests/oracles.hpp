#pragma once

// Reference implementations for the test suite, kept deliberately naive
// and separate from the library's algorithms: products by direct tuple
// recursion, partitions by direct generation, Bell numbers by the
// binomial recurrence.

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace oracles {

using Exp = std::int64_t;
using Support = std::vector<Exp>;

// Coefficients of the product of 0/1 polynomials, one exponent picked per
// factor, counted tuple by tuple.
inline std::map<Exp, mpz_class> product_counts(const std::vector<Support>& factors) {
    std::map<Exp, mpz_class> counts;
    std::vector<std::size_t> pick(factors.size(), 0);
    while (true) {
        Exp s = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) s += factors[i][pick[i]];
        counts[s] += 1;
        std::size_t i = factors.size();
        while (i > 0) {
            --i;
            if (++pick[i] < factors[i].size()) break;
            pick[i] = 0;
            if (i == 0) return counts;
        }
        if (factors.empty()) return counts;
    }
}

inline bool uniform_on(const std::map<Exp, mpz_class>& counts, Exp t) {
    if (counts.size() != static_cast<std::size_t>(t) + 1) return false;
    for (Exp s = 0; s <= t; ++s) {
        auto it = counts.find(s);
        if (it == counts.end() || it->second != 1) return false;
    }
    return true;
}

// All set partitions of {1..l}, each as blocks of 1-based elements in the
// order the elements join.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int l) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> current;
    auto rec = [&](auto&& self, int e) -> void {
        if (e > l) {
            out.push_back(current);
            return;
        }
        // index loop: recursion grows and shrinks `current` underneath
        for (std::size_t i = 0; i < current.size(); ++i) {
            current[i].push_back(e);
            self(self, e + 1);
            current[i].pop_back();
        }
        current.push_back({e});
        self(self, e + 1);
        current.pop_back();
    };
    rec(rec, 1);
    return out;
}

inline bool interval_free(const std::vector<std::vector<int>>& blocks) {
    for (const auto& b : blocks)
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] == b[i] + 1) return false;
    return true;
}

// B(0), B(1), ..., B(n) by B(m+1) = sum_k C(m,k) B(k).
inline std::vector<mpz_class> bell_numbers(int n) {
    std::vector<mpz_class> bell{1};
    for (int m = 0; m < n; ++m) {
        mpz_class next = 0;
        mpz_class binom = 1; // C(m, 0)
        for (int k = 0; k <= m; ++k) {
            next += binom * bell[static_cast<std::size_t>(k)];
            binom = binom * (m - k) / (k + 1);
        }
        bell.push_back(next);
    }
    return bell;
}

// Ordered factorizations into parts >= 2 by plain trial division.
inline std::vector<std::vector<Exp>> ordered_factorizations(Exp n) {
    std::vector<std::vector<Exp>> out;
    std::vector<Exp> prefix;
    auto rec = [&](auto&& self, Exp m) -> void {
        if (m == 1) {
            out.push_back(prefix);
            return;
        }
        for (Exp d = 2; d <= m; ++d) {
            if (m % d != 0) continue;
            prefix.push_back(d);
            self(self, m / d);
            prefix.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

// Exact sumset, or empty when a pairwise sum repeats.
inline Support sumset_or_empty(const Support& a, const Support& b) {
    std::map<Exp, int> sums;
    for (Exp x : a)
        for (Exp y : b) sums[x + y] += 1;
    Support out;
    for (const auto& [s, c] : sums) {
        if (c != 1) return {};
        out.push_back(s);
    }
    return out;
}

// Every (F, G) with F (+) G = target, both containing 0, F holding the
// least positive element of the target. Exhaustive over subsets, so keep
// the degree small.
inline std::vector<std::pair<Support, Support>> exact_splits(const Support& target) {
    std::vector<std::pair<Support, Support>> out;
    if (target.size() < 2 || target.front() != 0) return out;
    const Exp top = target.back();
    Exp least = target[1];
    std::vector<Exp> positives;
    for (Exp e = 1; e <= top; ++e) positives.push_back(e);
    const std::size_t n = positives.size();
    for (std::uint64_t fm = 0; fm < (1ull << n); ++fm) {
        Support f{0};
        for (std::size_t i = 0; i < n; ++i)
            if (fm & (1ull << i)) f.push_back(positives[i]);
        if (f.size() < 2) continue;
        bool has_least = false;
        for (Exp e : f) has_least |= e == least;
        if (!has_least) continue;
        for (std::uint64_t gm = 0; gm < (1ull << n); ++gm) {
            Support g{0};
            for (std::size_t i = 0; i < n; ++i)
                if (gm & (1ull << i)) g.push_back(positives[i]);
            if (sumset_or_empty(f, g) == target) out.emplace_back(f, g);
        }
    }
    return out;
}

} // namespace oracles
