#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fairsack/errors.hpp"
#include "fairsack/support_poly.hpp"

namespace fairsack {

using Rational = mpq_class;

/*
 * A die with sides 0..n and exact rational probabilities p_0..p_n. The top
 * side must be possible (p_n > 0) so that n is honest; p_0 may be zero,
 * though no semifair die has p_0 = 0.
 */
class RationalDie {
public:
    explicit RationalDie(std::vector<Rational> probabilities)
        : probs_(std::move(probabilities)) {
        if (probs_.empty())
            throw std::invalid_argument("die needs at least one side");
        Rational sum(0);
        for (const Rational& p : probs_) {
            if (p < 0 || p > 1)
                throw std::invalid_argument("side probability outside [0,1]");
            sum += p;
        }
        if (sum != 1)
            throw std::invalid_argument("side probabilities must sum to 1");
        if (probs_.back() == 0)
            throw std::invalid_argument("top side must have positive probability");
    }

    const std::vector<Rational>& probabilities() const { return probs_; }

    // Largest side value n.
    Exponent max_side() const { return static_cast<Exponent>(probs_.size()) - 1; }

    const Rational& probability(Exponent side) const {
        return probs_.at(static_cast<std::size_t>(side));
    }

    // Sides with positive probability, in increasing order.
    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        for (std::size_t j = 0; j < probs_.size(); ++j)
            if (probs_[j] != 0) s.push_back(static_cast<Exponent>(j));
        return s;
    }

    bool operator==(const RationalDie&) const = default;

private:
    std::vector<Rational> probs_;
};

/*
 * Semifair: the positive probabilities all share one value v, and the
 * support is symmetric under j -> n - j. Equivalently the generating
 * polynomial is v times a palindromic 0/1 polynomial.
 */
struct SemifairVerdict {
    bool semifair = false;
    // Pair of sides exhibiting the failure: either p_j != p_{n-j} (one of
    // them zero, the other not, or both positive but unequal), or two
    // support sides with different probabilities.
    std::optional<std::pair<Exponent, Exponent>> witness;
};

inline SemifairVerdict is_semifair(const RationalDie& die) {
    const auto& p = die.probabilities();
    const std::size_t n = p.size() - 1;
    for (std::size_t j = 0; j <= n; ++j) {
        if ((p[j] == 0) != (p[n - j] == 0))
            return {false, std::pair<Exponent, Exponent>(
                               static_cast<Exponent>(j), static_cast<Exponent>(n - j))};
    }
    const Rational& v = p[n];
    for (std::size_t j = 0; j <= n; ++j) {
        if (p[j] != 0 && p[j] != v)
            return {false, std::pair<Exponent, Exponent>(
                               static_cast<Exponent>(j), static_cast<Exponent>(n))};
    }
    return {true, std::nullopt};
}

// Strip the shared probability from a semifair die, leaving its support
// polynomial. The inverse of denormalize.
inline SupportPoly normalize(const RationalDie& die) {
    auto verdict = is_semifair(die);
    if (!verdict.semifair) {
        std::string msg = "die is not semifair";
        if (verdict.witness)
            msg += " (sides " + std::to_string(verdict.witness->first) + " and " +
                   std::to_string(verdict.witness->second) + " differ)";
        throw NotSemifairError(msg);
    }
    return SupportPoly(die.support());
}

// Equip a support containing 0 with the uniform probability 1/k on its k
// terms. Inverse of normalize on palindromic supports; defined for any
// support containing 0 so unfair candidates can be fed to the checkers.
inline RationalDie denormalize(const SupportPoly& poly) {
    if (poly.empty() || !poly.contains(0))
        throw InvalidSupportError("support must contain 0");
    const Exponent n = poly.degree();
    Rational v(1, static_cast<unsigned long>(poly.term_count()));
    v.canonicalize();
    std::vector<Rational> probs(static_cast<std::size_t>(n) + 1, Rational(0));
    for (Exponent e : poly.exponents())
        probs[static_cast<std::size_t>(e)] = v;
    return RationalDie(std::move(probs));
}

} // namespace fairsack
