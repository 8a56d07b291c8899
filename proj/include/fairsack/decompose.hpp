#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairsack/construct.hpp"
#include "fairsack/errors.hpp"
#include "fairsack/sumset.hpp"
#include "fairsack/support_poly.hpp"
#include "fairsack/verify.hpp"

namespace fairsack {

/*
 * A die expressed as a chain of stride factors: the product of
 * 1 + x^{b_j} + ... + x^{(a_j - 1) b_j} over the links, where each a_j b_j
 * divides b_{j+1}. Such products are collision free, and the dice of fair
 * sacks are exactly the reconstructions of chains. The empty chain is the
 * trivial die 1.
 */
class DieChain {
public:
    using Link = std::pair<Exponent, Exponent>; // (a_j, b_j)

    DieChain() = default;

    explicit DieChain(std::vector<Link> links) : links_(std::move(links)) {
        Exponent prev = 0; // a_j b_j of the previous link, 0 before the first
        for (const auto& [a, b] : links_) {
            if (a < 2) throw std::invalid_argument("chain factor must be at least 2");
            if (b < 1) throw std::invalid_argument("chain stride must be positive");
            if (prev != 0 && b % prev != 0)
                throw std::invalid_argument("chain stride must be divisible by the previous span");
            prev = checked_mul(a, b);
        }
    }

    DieChain(std::initializer_list<Link> links)
        : DieChain(std::vector<Link>(links)) {}

    const std::vector<Link>& links() const { return links_; }
    std::size_t size() const { return links_.size(); }

    SupportPoly reconstruct() const {
        SupportPoly d{0};
        for (const auto& [a, b] : links_)
            d = sumset(d, scaled_fair_poly(a, b));
        return d;
    }

    bool operator==(const DieChain&) const = default;

private:
    std::vector<Link> links_;
};

/*
 * Membership in some fair sack. Peels stride factors greedily: the least
 * positive element b of what remains must be the next stride, the run
 * length a is the largest with 0, b, ..., (a-1)b all present (a shorter
 * run cannot divide out, a longer one does not exist), and the quotient
 * by that factor is unique if it exists at all. Returns the chain, or
 * nothing when the die lies in no fair sack.
 */
inline std::optional<DieChain> die_membership(const SupportPoly& die) {
    if (die.empty() || !die.contains(0))
        throw InvalidSupportError("die must contain side 0");
    std::vector<DieChain::Link> links;
    SupportPoly q = die;
    Exponent span = 0;
    while (q.term_count() > 1) {
        Exponent b = *q.least_positive();
        if (span != 0 && b % span != 0) return std::nullopt;
        Exponent a = 1;
        while (q.contains(checked_mul(a, b))) ++a;
        auto rest = try_quotient(q, scaled_fair_poly(a, b));
        if (!rest) return std::nullopt;
        links.emplace_back(a, b);
        span = checked_mul(a, b);
        q = *std::move(rest);
    }
    return DieChain(std::move(links));
}

/*
 * Canonical decomposition of a fair sack: the unique interval-free pair
 * (a, p) with partition_sack(a, p) == sack up to die order. Walks b from
 * 1 to t+1; at each step exactly one die contains b (anything else throws
 * with b as witness), and that die contributes the factor a = least
 * multiple count whose product leaves its support.
 */
inline std::pair<OrderedFactorization, IntervalPartition> decompose_sack(const Sack& sack) {
    std::vector<SupportPoly> dice;
    for (const SupportPoly& d : sack.dice())
        if (d.term_count() > 1) dice.push_back(d); // trivial dice carry nothing
    const Exponent value = checked_add(sack.total(), 1); // t + 1

    std::vector<Exponent> factors;
    std::vector<int> assignment;             // step -> block label
    std::vector<std::size_t> block_of_die(dice.size(), SIZE_MAX);
    int next_block = 0;

    Exponent b = 1;
    while (b < value) {
        std::size_t owner = SIZE_MAX;
        for (std::size_t i = 0; i < dice.size(); ++i) {
            if (dice[i].contains(b)) {
                if (owner != SIZE_MAX)
                    throw NotFairError("two dice contain exponent " + std::to_string(b), b);
                owner = i;
            }
        }
        if (owner == SIZE_MAX)
            throw NotFairError("no die contains exponent " + std::to_string(b), b);
        Exponent a = 2;
        while (dice[owner].contains(checked_mul(a, b))) ++a;
        factors.push_back(a);
        if (block_of_die[owner] == SIZE_MAX) block_of_die[owner] = static_cast<std::size_t>(next_block++);
        assignment.push_back(static_cast<int>(block_of_die[owner]));
        b = checked_mul(a, b);
    }

    OrderedFactorization a(std::move(factors));
    IntervalPartition p = IntervalPartition::from_assignment(assignment);

    // Every die must be exactly the product of its steps' factors.
    Sack rebuilt = partition_sack(a, p);
    if (!rebuilt.same_dice(Sack(std::move(dice))))
        throw NotFairError("dice are not products of their stride factors");
    return {std::move(a), std::move(p)};
}

// Every fair sack with total t contains a die of order (largest side
// plus one) at least this, where p is the smallest prime dividing t+1.
inline Exponent largest_die_bound(Exponent t, Exponent p) {
    if (t < 0) throw std::invalid_argument("t must be nonnegative");
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    Exponent value = checked_add(t, 1);
    if (value % p != 0) throw std::invalid_argument("p must divide t+1");
    return value - value / p + 1;
}

// A single stride factor with a prime number of terms. These are the dice
// that admit no further splitting inside any fair sack.
inline bool is_atomic_fair_die(const SupportPoly& die) {
    if (die.term_count() < 2 || !die.contains(0)) return false;
    Exponent terms = static_cast<Exponent>(die.term_count());
    if (detail::prime_factors_ascending(terms).size() != 1) return false;
    Exponent b = die.exponents()[1];
    for (std::size_t u = 0; u < die.term_count(); ++u)
        if (die.exponents()[u] != checked_mul(static_cast<Exponent>(u), b)) return false;
    return true;
}

/*
 * Replace every die of a fair sack by the prime refinement of its chain:
 * a link with a = q_1 q_2 ... q_r (ascending primes) becomes r links
 * whose strides cascade from the original one. Dice keep their input
 * positions; trivial dice vanish.
 */
inline Sack atomize(const Sack& sack) {
    decompose_sack(sack); // fairness gate
    std::vector<SupportPoly> out;
    for (const SupportPoly& die : sack.dice()) {
        if (die.term_count() <= 1) continue;
        auto chain = die_membership(die);
        if (!chain)
            throw NotFairError("die " + die.to_string() + " lies in no fair sack");
        for (const auto& [a, b] : chain->links()) {
            Exponent stride = b;
            for (Exponent q : detail::prime_factors_ascending(a)) {
                out.push_back(scaled_fair_poly(q, stride));
                stride = checked_mul(stride, q);
            }
        }
    }
    return Sack(std::move(out));
}

/*
 * For a fair sack of atomic dice, the tower of fair subsacks obtained by
 * taking the dice of the first n' steps of the canonical decomposition,
 * n' = 1..n. Each member is fair with total b_{n'+1} - 1, and the tower
 * is the only maximal chain of fair subsacks under inclusion.
 */
inline std::vector<Sack> fair_subsack_chain(const Sack& sack) {
    for (const SupportPoly& die : sack.dice())
        if (!is_atomic_fair_die(die))
            throw NotAtomicError("die " + die.to_string() + " is not atomic");
    auto [a, p] = decompose_sack(sack);
    std::vector<Sack> chain;
    std::vector<SupportPoly> dice;
    for (std::size_t h = 0; h < a.size(); ++h) {
        dice.push_back(scaled_fair_poly(a.factors()[h], a.prefix_product(h)));
        chain.push_back(Sack(dice));
    }
    return chain;
}

/*
 * Every factorization of a die into atomic factors under the exact
 * sumset product, regardless of whether the die lies in a fair sack.
 * Factors are ordered by least positive element within one result and
 * results are lexicographic; at most `limit` results are produced
 * (0 means all). The trivial die has exactly the empty factorization.
 */
inline std::vector<std::vector<SupportPoly>>
sumset_atomizations(const SupportPoly& die, std::size_t limit = 1000) {
    if (die.empty() || !die.contains(0))
        throw InvalidSupportError("die must contain side 0");
    detail::SplitCache cache;
    std::vector<std::vector<SupportPoly>> out;
    std::vector<SupportPoly> prefix;
    detail::sumset_factorizations(cache, die, true, limit, prefix, out);
    return out;
}

} // namespace fairsack
