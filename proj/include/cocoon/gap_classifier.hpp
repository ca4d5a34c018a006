#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cocoon/errors.hpp"
#include "cocoon/residue_tables.hpp"

// Gap classification over consecutive odd composites. Adjacent members of a
// CocoonList can only differ by 2, 4 or 6; a gap of 4 brackets exactly one
// prime (the midpoint), a gap of 6 brackets exactly two (midpoint +- 1, a
// twin pair), a gap of 2 brackets none. Anything else is a theorem violation
// and aborts.
namespace cocoon {

struct CocoonPair {
    std::uint64_t lo; // odd composite
    std::uint64_t hi; // next odd composite; no odd composite lies between
    int gap() const { return static_cast<int>(hi - lo); }
};

struct ClassifiedGaps {
    std::uint64_t m = 0; // largest value considered (the list's limit)
    std::vector<CocoonPair> a2;
    std::vector<CocoonPair> a4;
    std::vector<CocoonPair> a6;
};

// Walk every adjacent pair of the list in ascending order, validating gaps.
template <typename Fn>
void for_each_pair(const CocoonList& cocoons, Fn&& fn) {
    const auto& values = cocoons.values();
    if (values.empty())
        throw DomainError("for_each_pair: cocoon list is empty");
    for (std::size_t i = 1; i < values.size(); ++i) {
        const CocoonPair pair{values[i - 1], values[i]};
        const int gap = pair.gap();
        if (gap != 2 && gap != 4 && gap != 6)
            throw TheoremViolation("consecutive odd composites " + std::to_string(pair.lo) +
                                   " and " + std::to_string(pair.hi) + " differ by " +
                                   std::to_string(gap) + "; expected 2, 4 or 6");
        fn(pair);
    }
}

inline ClassifiedGaps classify(const CocoonList& cocoons) {
    ClassifiedGaps out;
    out.m = cocoons.limit();
    for_each_pair(cocoons, [&](const CocoonPair& pair) {
        switch (pair.gap()) {
        case 2: out.a2.push_back(pair); break;
        case 4: out.a4.push_back(pair); break;
        default: out.a6.push_back(pair); break;
        }
    });
    return out;
}

// The primes a single pair brackets: none for gap 2, the midpoint for gap 4,
// midpoint -+ 1 for gap 6.
struct PairPrimes {
    std::array<std::uint64_t, 2> p{};
    int count = 0;
};

inline PairPrimes pair_primes(const CocoonPair& pair) {
    PairPrimes out;
    const std::uint64_t mid = (pair.lo + pair.hi) / 2;
    switch (pair.gap()) {
    case 4:
        out.p[0] = mid;
        out.count = 1;
        break;
    case 6:
        out.p[0] = mid - 1;
        out.p[1] = mid + 1;
        out.count = 2;
        break;
    default:
        break;
    }
    return out;
}

// {2,3,5,7} plus every bracketed prime, ascending. Equals the full set of
// primes <= m whenever m itself is an odd composite.
inline std::vector<std::uint64_t> reconstruct_primes(const ClassifiedGaps& g) {
    std::vector<std::uint64_t> out{2, 3, 5, 7};
    out.reserve(4 + g.a4.size() + 2 * g.a6.size());
    // Merge the gap-4 and gap-6 pair streams by position; midpoints then come
    // out already sorted.
    std::size_t i4 = 0, i6 = 0;
    while (i4 < g.a4.size() || i6 < g.a6.size()) {
        const bool take4 = i6 >= g.a6.size() ||
                           (i4 < g.a4.size() && g.a4[i4].lo < g.a6[i6].lo);
        const PairPrimes primes = pair_primes(take4 ? g.a4[i4++] : g.a6[i6++]);
        for (int k = 0; k < primes.count; ++k)
            out.push_back(primes.p[k]);
    }
    return out;
}

// One twin pair (mid-1, mid+1) per gap-6 pair, ascending.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> twin_pairs(const ClassifiedGaps& g) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    out.reserve(g.a6.size());
    for (const CocoonPair& pair : g.a6) {
        const std::uint64_t mid = (pair.lo + pair.hi) / 2;
        out.emplace_back(mid - 1, mid + 1);
    }
    return out;
}

// One prime midpoint per gap-4 pair, ascending.
inline std::vector<std::uint64_t> isolated_primes(const ClassifiedGaps& g) {
    std::vector<std::uint64_t> out;
    out.reserve(g.a4.size());
    for (const CocoonPair& pair : g.a4)
        out.push_back((pair.lo + pair.hi) / 2);
    return out;
}

} // namespace cocoon
