#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fairsack/errors.hpp"

namespace fairsack {

// Exponents and totals. Totals a machine can enumerate fit comfortably in
// 64 bits; products of factors are checked rather than left to wrap.
using Exponent = std::int64_t;

inline Exponent checked_mul(Exponent a, Exponent b) {
    Exponent r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("exponent product overflows 64 bits");
    return r;
}

inline Exponent checked_add(Exponent a, Exponent b) {
    Exponent r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("exponent sum overflows 64 bits");
    return r;
}

/*
 * A polynomial with coefficients in {0,1}, stored as the strictly
 * increasing list of exponents carrying a 1. This is the normal form of a
 * semifair die: 1 + x^{e_1} + ... + x^{e_k}. The zero polynomial is the
 * empty support; note that a die normal form always contains exponent 0.
 */
class SupportPoly {
public:
    SupportPoly() = default;

    explicit SupportPoly(std::vector<Exponent> support)
        : support_(std::move(support)) {
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (support_[i] < 0)
                throw std::invalid_argument("support exponent is negative");
            if (i > 0 && support_[i] <= support_[i - 1])
                throw std::invalid_argument("support exponents must be strictly increasing");
        }
    }

    SupportPoly(std::initializer_list<Exponent> support)
        : SupportPoly(std::vector<Exponent>(support)) {}

    const std::vector<Exponent>& exponents() const { return support_; }
    std::size_t term_count() const { return support_.size(); }
    bool empty() const { return support_.empty(); }

    // Largest exponent; the polynomial must be nonzero.
    Exponent degree() const {
        if (support_.empty())
            throw std::invalid_argument("zero polynomial has no degree");
        return support_.back();
    }

    bool contains(Exponent e) const {
        return std::binary_search(support_.begin(), support_.end(), e);
    }

    // Smallest positive exponent in the support, if any.
    std::optional<Exponent> least_positive() const {
        for (Exponent e : support_)
            if (e > 0) return e;
        return std::nullopt;
    }

    // Support symmetric under e -> degree() - e.
    bool is_palindromic() const {
        if (support_.empty()) return false;
        Exponent d = support_.back();
        std::size_t n = support_.size();
        for (std::size_t i = 0; i < n; ++i)
            if (support_[i] != d - support_[n - 1 - i]) return false;
        return true;
    }

    std::string to_string() const;

    auto operator<=>(const SupportPoly&) const = default;

private:
    std::vector<Exponent> support_;
};

// 1 + x + ... + x^t, the generating polynomial of a fair total on 0..t.
inline SupportPoly fair_poly(Exponent t) {
    if (t < 0) throw std::invalid_argument("fair_poly: t must be nonnegative");
    std::vector<Exponent> s(static_cast<std::size_t>(t) + 1);
    for (Exponent e = 0; e <= t; ++e) s[static_cast<std::size_t>(e)] = e;
    return SupportPoly(std::move(s));
}

// 1 + x^b + x^{2b} + ... + x^{(a-1)b}: a terms with stride b.
inline SupportPoly scaled_fair_poly(Exponent a, Exponent b) {
    if (a < 1) throw std::invalid_argument("scaled_fair_poly: a must be positive");
    if (b < 1) throw std::invalid_argument("scaled_fair_poly: b must be positive");
    std::vector<Exponent> s(static_cast<std::size_t>(a));
    for (Exponent u = 0; u < a; ++u)
        s[static_cast<std::size_t>(u)] = checked_mul(u, b);
    return SupportPoly(std::move(s));
}

/*
 * Coefficients of a product of support polynomials, kept exactly: count(s)
 * is the number of ways to pick one exponent from each factor summing to s.
 * Counts use arbitrary precision since they grow like the product of term
 * counts. The empty product is 1, i.e. {0: 1}.
 */
class MultiplicityMap {
public:
    using Count = mpz_class;

    MultiplicityMap() : counts_{{0, 1}} {}

    explicit MultiplicityMap(std::map<Exponent, Count> counts)
        : counts_(std::move(counts)) {
        for (auto it = counts_.begin(); it != counts_.end();) {
            if (it->first < 0)
                throw std::invalid_argument("multiplicity at negative exponent");
            if (it->second < 0)
                throw std::invalid_argument("negative multiplicity");
            if (it->second == 0)
                it = counts_.erase(it);
            else
                ++it;
        }
    }

    const std::map<Exponent, Count>& counts() const { return counts_; }

    Count count(Exponent s) const {
        auto it = counts_.find(s);
        return it == counts_.end() ? Count(0) : it->second;
    }

    bool operator==(const MultiplicityMap&) const = default;

private:
    std::map<Exponent, Count> counts_;
};

inline MultiplicityMap product(std::span<const SupportPoly> factors) {
    std::map<Exponent, mpz_class> acc{{0, 1}};
    for (const SupportPoly& f : factors) {
        std::map<Exponent, mpz_class> next;
        for (const auto& [s, c] : acc)
            for (Exponent e : f.exponents())
                next[checked_add(s, e)] += c;
        acc = std::move(next);
    }
    return MultiplicityMap(std::move(acc));
}

inline MultiplicityMap product(const std::vector<SupportPoly>& factors) {
    return product(std::span<const SupportPoly>(factors));
}

inline MultiplicityMap product(std::initializer_list<SupportPoly> factors) {
    return product(std::span<const SupportPoly>(factors.begin(), factors.size()));
}

// True exactly when the map is 1 at each of 0..t and 0 elsewhere.
inline bool is_uniform_total(const MultiplicityMap& m, Exponent t) {
    if (t < 0) return false;
    const auto& c = m.counts();
    if (c.size() != static_cast<std::size_t>(t) + 1) return false;
    if (c.begin()->first != 0 || c.rbegin()->first != t) return false;
    for (const auto& [s, n] : c)
        if (n != 1) return false;
    return true;
}

/*
 * Exact sumset A + B: every pairwise sum of exponents, provided all
 * |A||B| sums are distinct. Returns nothing on a repeated sum. This is the
 * early-exit form of multiplication: it succeeds iff the product of the
 * two polynomials again has all coefficients in {0,1}.
 */
inline std::optional<SupportPoly> try_sumset(const SupportPoly& a, const SupportPoly& b) {
    std::vector<Exponent> sums;
    sums.reserve(a.term_count() * b.term_count());
    for (Exponent x : a.exponents())
        for (Exponent y : b.exponents())
            sums.push_back(checked_add(x, y));
    std::sort(sums.begin(), sums.end());
    if (std::adjacent_find(sums.begin(), sums.end()) != sums.end())
        return std::nullopt;
    return SupportPoly(std::move(sums));
}

inline SupportPoly sumset(const SupportPoly& a, const SupportPoly& b) {
    auto r = try_sumset(a, b);
    if (!r)
        throw TermCollisionError("product of supports has a repeated total");
    return *std::move(r);
}

inline std::string SupportPoly::to_string() const {
    if (support_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (i > 0) out += '+';
        Exponent e = support_[i];
        if (e == 0)
            out += '1';
        else if (e == 1)
            out += 'x';
        else {
            out += "x^";
            out += std::to_string(e);
        }
    }
    return out;
}

} // namespace fairsack
