#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fairsack/support_poly.hpp"

namespace fairsack {

/*
 * If support = factor (+) Q for some set Q, that Q is unique and this
 * finds it; otherwise nothing. Uniqueness and the greedy order both come
 * from the same observation: the least element of support not yet covered
 * by factor (+) (partial Q) must be 0 + (next element of Q).
 *
 * Both arguments must contain 0.
 */
inline std::optional<SupportPoly> try_quotient(const SupportPoly& support,
                                               const SupportPoly& factor) {
    if (support.empty() || factor.empty() || !support.contains(0) || !factor.contains(0))
        return std::nullopt;
    const auto& sup = support.exponents();
    const auto& fac = factor.exponents();
    if (sup.size() % fac.size() != 0) return std::nullopt;
    std::vector<char> covered(sup.size(), 0);
    std::vector<Exponent> quotient;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        if (covered[i]) continue;
        Exponent q = sup[i];
        quotient.push_back(q);
        for (Exponent f : fac) {
            Exponent p = checked_add(f, q);
            auto it = std::lower_bound(sup.begin(), sup.end(), p);
            if (it == sup.end() || *it != p) return std::nullopt;
            std::size_t j = static_cast<std::size_t>(it - sup.begin());
            if (covered[j]) return std::nullopt;
            covered[j] = 1;
        }
    }
    return SupportPoly(std::move(quotient));
}

namespace detail {

/*
 * Enumerates every exact two-factor split q = F (+) G where 0 is in both
 * factors and F is the factor holding the least positive element of q.
 * The trivial split (q, {0}) is included; (F, G) and (G, F) are never both
 * reported, since at most one side holds that least element.
 *
 * Works by deciding membership of each relevant position in increasing
 * order. A position is relevant if it lies in q or is a pairwise sum of
 * members chosen so far; undecided positions in q branch two ways, and
 * any position whose forced pair count disagrees with q prunes the
 * branch. Pair counts live in a map so sparse supports of huge degree
 * stay cheap.
 */
class SplitScan {
public:
    explicit SplitScan(const SupportPoly& q) : sup_(q.exponents()) {}

    std::vector<std::pair<SupportPoly, SupportPoly>> run() {
        out_.clear();
        if (sup_.size() < 2 || sup_.front() != 0) return {};
        scan(0);
        std::sort(out_.begin(), out_.end());
        return std::move(out_);
    }

private:
    bool present(Exponent s) const {
        return std::binary_search(sup_.begin(), sup_.end(), s);
    }

    void scan(Exponent cur) {
        const Exponent top = sup_.back();
        while (true) {
            Exponent next = -1;
            auto si = std::upper_bound(sup_.begin(), sup_.end(), cur);
            if (si != sup_.end()) next = *si;
            auto ri = reps_.upper_bound(cur);
            if (ri != reps_.end() && (next < 0 || ri->first < next)) next = ri->first;
            if (next < 0) {
                out_.emplace_back(with_zero(f_), with_zero(g_));
                return;
            }
            cur = next;
            int needed = present(cur) ? 1 : 0;
            auto it = reps_.find(cur);
            int have = it == reps_.end() ? 0 : it->second;
            if (have > needed) return;
            if (have == needed) continue;
            break; // have == 0, needed == 1: undecided member of q
        }
        // The least positive element belongs to F by convention; every
        // later undecided position tries both sides.
        bool f_only = f_.empty() && g_.empty();
        assign(f_, g_, cur, top);
        if (!f_only) assign(g_, f_, cur, top);
    }

    void assign(std::vector<Exponent>& self, const std::vector<Exponent>& other,
                Exponent s, Exponent top) {
        std::vector<Exponent> touched;
        bool ok = bump(s, touched);
        for (std::size_t i = 0; ok && i < other.size(); ++i) {
            Exponent p = checked_add(s, other[i]);
            ok = p <= top && bump(p, touched);
        }
        if (ok) {
            self.push_back(s);
            scan(s);
            self.pop_back();
        }
        for (Exponent p : touched)
            if (--reps_[p] == 0) reps_.erase(p);
    }

    bool bump(Exponent p, std::vector<Exponent>& touched) {
        int r = ++reps_[p];
        touched.push_back(p);
        return r <= (present(p) ? 1 : 0);
    }

    SupportPoly with_zero(const std::vector<Exponent>& members) const {
        std::vector<Exponent> s;
        s.reserve(members.size() + 1);
        s.push_back(0);
        s.insert(s.end(), members.begin(), members.end());
        return SupportPoly(std::move(s));
    }

    const std::vector<Exponent>& sup_;
    std::vector<Exponent> f_, g_; // positive members, increasing
    std::map<Exponent, int> reps_;
    std::vector<std::pair<SupportPoly, SupportPoly>> out_;
};

} // namespace detail

// All exact splits q = F (+) G, F holding the least positive element of
// q, sorted by F. Empty when q has fewer than two terms or lacks 0.
inline std::vector<std::pair<SupportPoly, SupportPoly>> exact_splits(const SupportPoly& q) {
    return detail::SplitScan(q).run();
}

namespace detail {

// Split structure of one support, cached across a factorization search.
struct SplitCacheEntry {
    std::vector<std::pair<SupportPoly, SupportPoly>> splits;
    bool atomic = false; // no split besides (q, {0})
};

class SplitCache {
public:
    const SplitCacheEntry& splits_of(const SupportPoly& q) {
        auto it = cache_.find(q);
        if (it != cache_.end()) return it->second;
        SplitCacheEntry e;
        e.splits = exact_splits(q);
        e.atomic = q.term_count() >= 2 && e.splits.size() == 1;
        return cache_.emplace(q, std::move(e)).first->second;
    }

private:
    std::map<SupportPoly, SplitCacheEntry> cache_;
};

/*
 * All multisets of >= 2-term factors with exact product q, emitted with
 * factors in increasing order of least positive element (which is also
 * increasing lexicographic order, and is canonical: two factors of one
 * product never share their least positive element). Each multiset is
 * found exactly once because the factor holding the least positive
 * element of the remaining quotient is unique at every step.
 *
 * require_atomic keeps only factorizations into atomic factors; limit
 * stops the search after that many results (0 means no limit).
 */
inline void sumset_factorizations(SplitCache& cache, const SupportPoly& q,
                                  bool require_atomic, std::size_t limit,
                                  std::vector<SupportPoly>& prefix,
                                  std::vector<std::vector<SupportPoly>>& out) {
    if (limit && out.size() >= limit) return;
    if (q.term_count() == 1) {
        out.push_back(prefix);
        return;
    }
    // std::map keeps references stable while the cache grows underneath.
    const auto& splits = cache.splits_of(q).splits;
    for (const auto& [f, rest] : splits) {
        if (require_atomic && !cache.splits_of(f).atomic) continue;
        prefix.push_back(f);
        sumset_factorizations(cache, rest, require_atomic, limit, prefix, out);
        prefix.pop_back();
        if (limit && out.size() >= limit) return;
    }
}

} // namespace detail

} // namespace fairsack
