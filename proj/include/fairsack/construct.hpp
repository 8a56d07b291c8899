#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fairsack/errors.hpp"
#include "fairsack/support_poly.hpp"

namespace fairsack {

/*
 * An ordered factorization a_1 * a_2 * ... * a_l with every a_h >= 2.
 * Its value is t+1 and its prefix products b_h = a_1 ... a_{h-1} are the
 * strides of the dice it generates. Indices into the factor list are
 * 0-based half-open ranges throughout the API.
 */
class OrderedFactorization {
public:
    OrderedFactorization() = default;

    explicit OrderedFactorization(std::vector<Exponent> factors)
        : factors_(std::move(factors)) {
        for (Exponent a : factors_)
            if (a < 2)
                throw std::invalid_argument("factor must be at least 2");
        Exponent p = 1;
        for (Exponent a : factors_) p = checked_mul(p, a);
    }

    OrderedFactorization(std::initializer_list<Exponent> factors)
        : OrderedFactorization(std::vector<Exponent>(factors)) {}

    const std::vector<Exponent>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }

    // b_{i+1} in 1-based terms: the product of factors [0, i).
    Exponent prefix_product(std::size_t i) const {
        if (i > factors_.size())
            throw std::invalid_argument("prefix index out of range");
        Exponent p = 1;
        for (std::size_t h = 0; h < i; ++h) p = checked_mul(p, factors_[h]);
        return p;
    }

    Exponent value() const { return prefix_product(factors_.size()); } // t + 1
    Exponent total() const { return value() - 1; }

    std::string to_string(bool ascii = false) const {
        if (factors_.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i > 0) out += ascii ? "*" : "·";
            out += std::to_string(factors_[i]);
        }
        return out;
    }

    auto operator<=>(const OrderedFactorization&) const = default;

private:
    std::vector<Exponent> factors_;
};

/*
 * A set partition of {1..l}, kept in canonical form: each block sorted,
 * blocks ordered by least element. Interval-free means no block contains
 * two consecutive integers h, h+1.
 */
class IntervalPartition {
public:
    IntervalPartition() = default;

    explicit IntervalPartition(std::vector<std::vector<int>> blocks)
        : blocks_(std::move(blocks)) {
        std::size_t l = 0;
        for (auto& b : blocks_) {
            if (b.empty())
                throw std::invalid_argument("partition block is empty");
            std::sort(b.begin(), b.end());
            l += b.size();
        }
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& x, const auto& y) { return x.front() < y.front(); });
        std::vector<bool> seen(l + 1, false);
        for (const auto& b : blocks_)
            for (int e : b) {
                if (e < 1 || static_cast<std::size_t>(e) > l || seen[static_cast<std::size_t>(e)])
                    throw std::invalid_argument("blocks must partition 1..l");
                seen[static_cast<std::size_t>(e)] = true;
            }
    }

    // assignment[i] names the block of element i+1; block identity is by
    // value, so any labeling works.
    static IntervalPartition from_assignment(const std::vector<int>& assignment) {
        int top = -1;
        for (int g : assignment) top = std::max(top, g);
        std::vector<std::vector<int>> blocks(top < 0 ? 0 : static_cast<std::size_t>(top) + 1);
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            if (assignment[i] < 0)
                throw std::invalid_argument("negative block label");
            blocks[static_cast<std::size_t>(assignment[i])].push_back(static_cast<int>(i) + 1);
        }
        std::erase_if(blocks, [](const auto& b) { return b.empty(); });
        return IntervalPartition(std::move(blocks));
    }

    static IntervalPartition singletons(std::size_t l) {
        std::vector<std::vector<int>> blocks;
        blocks.reserve(l);
        for (std::size_t h = 1; h <= l; ++h)
            blocks.push_back({static_cast<int>(h)});
        return IntervalPartition(std::move(blocks));
    }

    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }

    std::size_t element_count() const {
        std::size_t l = 0;
        for (const auto& b : blocks_) l += b.size();
        return l;
    }

    // 0-based index of the block containing 1-based element h.
    std::size_t block_of(int h) const {
        for (std::size_t g = 0; g < blocks_.size(); ++g)
            if (std::binary_search(blocks_[g].begin(), blocks_[g].end(), h))
                return g;
        throw std::invalid_argument("element not in partition");
    }

    bool interval_free() const {
        for (const auto& b : blocks_)
            for (std::size_t i = 1; i < b.size(); ++i)
                if (b[i] == b[i - 1] + 1) return false;
        return true;
    }

    std::string to_string() const {
        std::string out = "[";
        for (std::size_t g = 0; g < blocks_.size(); ++g) {
            if (g > 0) out += ',';
            out += '{';
            for (std::size_t i = 0; i < blocks_[g].size(); ++i) {
                if (i > 0) out += ',';
                out += std::to_string(blocks_[g][i]);
            }
            out += '}';
        }
        out += ']';
        return out;
    }

    auto operator<=>(const IntervalPartition&) const = default;

private:
    std::vector<std::vector<int>> blocks_;
};

/*
 * A multiset of normalized dice. Order of the dice carries no meaning;
 * canonical() sorts them so equal multisets compare equal. The empty sack
 * is the sack with total 0.
 */
class Sack {
public:
    Sack() = default;

    explicit Sack(std::vector<SupportPoly> dice) : dice_(std::move(dice)) {
        for (const SupportPoly& d : dice_)
            if (d.empty() || !d.contains(0))
                throw std::invalid_argument("every die must contain side 0");
    }

    Sack(std::initializer_list<SupportPoly> dice)
        : Sack(std::vector<SupportPoly>(dice)) {}

    const std::vector<SupportPoly>& dice() const { return dice_; }
    std::size_t size() const { return dice_.size(); }

    Exponent total() const {
        Exponent t = 0;
        for (const SupportPoly& d : dice_) t = checked_add(t, d.degree());
        return t;
    }

    Sack canonical() const {
        Sack s = *this;
        std::sort(s.dice_.begin(), s.dice_.end());
        return s;
    }

    bool same_dice(const Sack& other) const {
        return canonical() == other.canonical();
    }

    auto operator<=>(const Sack&) const = default;

private:
    std::vector<SupportPoly> dice_;
};

// The sack of the finest grouping: one die per factor, d_h with a_h terms
// at stride b_h.
inline Sack factorization_sack(const OrderedFactorization& a) {
    std::vector<SupportPoly> dice;
    dice.reserve(a.size());
    Exponent b = 1;
    for (Exponent f : a.factors()) {
        dice.emplace_back(scaled_fair_poly(f, b));
        b = checked_mul(b, f);
    }
    return Sack(std::move(dice));
}

// Product of the dice at positions [first, last). Consecutive strides
// nest, so this is again a single stride-b_first die.
inline SupportPoly partial_products(const OrderedFactorization& a,
                                    std::size_t first, std::size_t last) {
    if (first > last || last > a.size())
        throw std::invalid_argument("bad range");
    Exponent terms = 1;
    for (std::size_t h = first; h < last; ++h)
        terms = checked_mul(terms, a.factors()[h]);
    return scaled_fair_poly(terms, a.prefix_product(first));
}

// Replace the run [first, last) by its single product factor.
inline OrderedFactorization collapse(const OrderedFactorization& a,
                                     std::size_t first, std::size_t last) {
    if (first > last || last > a.size())
        throw std::invalid_argument("bad range");
    if (last - first < 2) return a;
    std::vector<Exponent> out;
    out.reserve(a.size() - (last - first) + 1);
    for (std::size_t h = 0; h < first; ++h) out.push_back(a.factors()[h]);
    Exponent m = 1;
    for (std::size_t h = first; h < last; ++h) m = checked_mul(m, a.factors()[h]);
    out.push_back(m);
    for (std::size_t h = last; h < a.size(); ++h) out.push_back(a.factors()[h]);
    return OrderedFactorization(std::move(out));
}

/*
 * One die per block of p: the product over h in the block of the stride
 * die of position h. Distinct strides make every such product collision
 * free; the collision error is defensive. Blocks are emitted in canonical
 * order (least position first), which sorts the dice by their least
 * positive exponent.
 */
inline Sack partition_sack(const OrderedFactorization& a, const IntervalPartition& p) {
    if (p.element_count() != a.size())
        throw std::invalid_argument("partition size does not match factorization");
    std::vector<SupportPoly> dice;
    dice.reserve(p.block_count());
    for (const auto& block : p.blocks()) {
        SupportPoly d{0};
        for (int h : block)
            d = sumset(d, scaled_fair_poly(a.factors()[static_cast<std::size_t>(h) - 1],
                                           a.prefix_product(static_cast<std::size_t>(h) - 1)));
        dice.push_back(std::move(d));
    }
    return Sack(std::move(dice));
}

namespace detail {

inline std::vector<Exponent> prime_factors_ascending(Exponent n) {
    std::vector<Exponent> out;
    for (Exponent q = 2; q <= n / q; ++q)
        while (n % q == 0) {
            out.push_back(q);
            n /= q;
        }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace detail

/*
 * Refine every factor into its ascending prime factorization, keeping the
 * refined positions of one original factor in that factor's block. The
 * result generates the same sack dice split into prime-stride factors.
 */
inline std::pair<OrderedFactorization, IntervalPartition>
prime_refine(const OrderedFactorization& a, const IntervalPartition& p) {
    if (p.element_count() != a.size())
        throw std::invalid_argument("partition size does not match factorization");
    std::vector<Exponent> refined;
    std::vector<int> assignment;
    for (std::size_t h = 0; h < a.size(); ++h) {
        auto primes = detail::prime_factors_ascending(a.factors()[h]);
        for (Exponent q : primes) {
            refined.push_back(q);
            assignment.push_back(static_cast<int>(p.block_of(static_cast<int>(h) + 1)));
        }
    }
    return {OrderedFactorization(std::move(refined)),
            IntervalPartition::from_assignment(assignment)};
}

/*
 * Merge maximal runs of consecutive positions lying in one block into a
 * single collapsed factor. The merged pair is interval free and generates
 * the same sack.
 */
inline std::pair<OrderedFactorization, IntervalPartition>
canonicalize(const OrderedFactorization& a, const IntervalPartition& p) {
    if (p.element_count() != a.size())
        throw std::invalid_argument("partition size does not match factorization");
    std::vector<Exponent> merged;
    std::vector<int> assignment;
    std::size_t h = 0;
    while (h < a.size()) {
        std::size_t g = p.block_of(static_cast<int>(h) + 1);
        Exponent m = a.factors()[h];
        std::size_t j = h + 1;
        while (j < a.size() && p.block_of(static_cast<int>(j) + 1) == g) {
            m = checked_mul(m, a.factors()[j]);
            ++j;
        }
        merged.push_back(m);
        assignment.push_back(static_cast<int>(g));
        h = j;
    }
    return {OrderedFactorization(std::move(merged)),
            IntervalPartition::from_assignment(assignment)};
}

} // namespace fairsack
