#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "fairsack/construct.hpp"
#include "fairsack/rational_die.hpp"
#include "fairsack/support_poly.hpp"

namespace fairsack {

namespace detail {

// Full expansion of a product of supports, tracking per total the exact
// number of generating tuples and the two lexicographically smallest ones.
// Keeping two smallest prefixes per partial sum is enough: dropping a
// prefix can only drop tuples that already have two smaller siblings.
struct ExpansionEntry {
    mpz_class count;
    std::vector<std::vector<Exponent>> tuples; // at most 2, sorted
};

inline void keep_two_smallest(std::vector<std::vector<Exponent>>& tuples,
                              std::vector<Exponent>&& candidate) {
    auto it = std::lower_bound(tuples.begin(), tuples.end(), candidate);
    if (it != tuples.end() && *it == candidate) return;
    tuples.insert(it, std::move(candidate));
    if (tuples.size() > 2) tuples.pop_back();
}

inline std::map<Exponent, ExpansionEntry> expand(const std::vector<SupportPoly>& dice) {
    std::map<Exponent, ExpansionEntry> acc;
    acc[0] = ExpansionEntry{1, {{}}};
    for (const SupportPoly& d : dice) {
        std::map<Exponent, ExpansionEntry> next;
        for (const auto& [s, entry] : acc) {
            for (Exponent e : d.exponents()) {
                ExpansionEntry& ne = next[checked_add(s, e)];
                ne.count += entry.count;
                for (const auto& prefix : entry.tuples) {
                    std::vector<Exponent> candidate = prefix;
                    candidate.push_back(e);
                    keep_two_smallest(ne.tuples, std::move(candidate));
                }
            }
        }
        acc = std::move(next);
    }
    return acc;
}

} // namespace detail

// A total hit by more than one choice of sides, with the two smallest
// side tuples (ordered like the dice) as evidence.
struct TotalCollision {
    Exponent total = 0;
    std::vector<Exponent> first;
    std::vector<Exponent> second;

    bool operator==(const TotalCollision&) const = default;
};

/*
 * Everything a fairness check learned. `fair` holds exactly when the
 * other three members are empty; the lists are exhaustive, not truncated
 * at the first failure.
 */
struct FairnessReport {
    bool fair = false;
    std::vector<std::size_t> semifair_failures; // indices of offending dice
    std::vector<TotalCollision> total_collisions;
    std::vector<Exponent> missing_totals;

    bool operator==(const FairnessReport&) const = default;
};

namespace detail {

inline FairnessReport report_from_expansion(std::map<Exponent, ExpansionEntry> expansion,
                                            Exponent t,
                                            std::vector<std::size_t> semifair_failures) {
    FairnessReport r;
    r.semifair_failures = std::move(semifair_failures);
    for (auto& [s, entry] : expansion) {
        if (entry.count > 1)
            r.total_collisions.push_back(
                TotalCollision{s, std::move(entry.tuples[0]), std::move(entry.tuples[1])});
    }
    for (Exponent s = 0; s <= t; ++s)
        if (!expansion.count(s)) r.missing_totals.push_back(s);
    r.fair = r.semifair_failures.empty() && r.total_collisions.empty() &&
             r.missing_totals.empty();
    return r;
}

} // namespace detail

// Is the total of a sack of normalized dice uniform on 0..total()? Each
// die must additionally be palindromic, i.e. honestly semifair.
inline FairnessReport check_fair(const Sack& sack) {
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < sack.size(); ++i)
        if (!sack.dice()[i].is_palindromic()) bad.push_back(i);
    return detail::report_from_expansion(detail::expand(sack.dice()), sack.total(),
                                         std::move(bad));
}

/*
 * The two-condition check on arbitrary rational dice: every die semifair,
 * and every total on 0..t reached by exactly one combination of possible
 * sides. Both conditions are evaluated in full; together they are
 * equivalent to the total being uniform.
 */
inline FairnessReport check_gk(const std::vector<RationalDie>& dice) {
    std::vector<std::size_t> bad;
    std::vector<SupportPoly> supports;
    supports.reserve(dice.size());
    Exponent t = 0;
    for (std::size_t i = 0; i < dice.size(); ++i) {
        if (!is_semifair(dice[i]).semifair) bad.push_back(i);
        supports.emplace_back(dice[i].support());
        t = checked_add(t, dice[i].max_side());
    }
    return detail::report_from_expansion(detail::expand(supports), t, std::move(bad));
}

// Sides s >= 1 shared by two or more dice, or side 1 missing from all of
// them. `dice` lists the offenders (empty in the missing-1 case).
struct UniqueTermsViolation {
    Exponent exponent = 0;
    std::vector<std::size_t> dice;

    bool operator==(const UniqueTermsViolation&) const = default;
};

struct UniqueTermsResult {
    bool unique = false;
    std::vector<UniqueTermsViolation> violations;
};

inline UniqueTermsResult unique_terms(const Sack& sack) {
    std::map<Exponent, std::vector<std::size_t>> owners;
    for (std::size_t i = 0; i < sack.size(); ++i)
        for (Exponent e : sack.dice()[i].exponents())
            if (e >= 1) owners[e].push_back(i);
    UniqueTermsResult r;
    for (auto& [e, who] : owners)
        if (who.size() >= 2) r.violations.push_back({e, std::move(who)});
    if (sack.total() >= 1 && !owners.count(1))
        r.violations.insert(r.violations.begin(), {1, {}});
    r.unique = r.violations.empty();
    return r;
}

/*
 * For a fair sack, each total s on 0..t is realized by exactly one side
 * tuple; sigma(i, s) is the side die i shows in it. Row s of the table is
 * that tuple.
 */
class FactorDegreeTable {
public:
    FactorDegreeTable(std::size_t dice, std::vector<std::vector<Exponent>> rows)
        : dice_(dice), rows_(std::move(rows)) {}

    std::size_t die_count() const { return dice_; }
    Exponent total() const { return static_cast<Exponent>(rows_.size()) - 1; }

    const std::vector<Exponent>& row(Exponent s) const {
        return rows_.at(static_cast<std::size_t>(s));
    }

    Exponent sigma(std::size_t die, Exponent s) const {
        return row(s).at(die);
    }

private:
    std::size_t dice_;
    std::vector<std::vector<Exponent>> rows_;
};

inline FactorDegreeTable factor_degrees(const Sack& sack) {
    auto expansion = detail::expand(sack.dice());
    const Exponent t = sack.total();
    std::vector<std::vector<Exponent>> rows;
    rows.reserve(static_cast<std::size_t>(t) + 1);
    for (Exponent s = 0; s <= t; ++s) {
        auto it = expansion.find(s);
        if (it == expansion.end())
            throw NotFairError("no side tuple reaches total " + std::to_string(s), s);
        if (it->second.count != 1)
            throw NotFairError("total " + std::to_string(s) + " is reached more than once", s);
        rows.push_back(std::move(it->second.tuples[0]));
    }
    for (std::size_t i = 0; i < sack.size(); ++i)
        if (!sack.dice()[i].is_palindromic())
            throw NotFairError("die " + std::to_string(i) + " is not palindromic");
    return FactorDegreeTable(sack.size(), std::move(rows));
}

} // namespace fairsack
