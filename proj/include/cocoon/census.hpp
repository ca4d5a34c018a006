#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cocoon/errors.hpp"
#include "cocoon/gap_classifier.hpp"
#include "cocoon/oracle.hpp"
#include "cocoon/residue_tables.hpp"

// Exact counting identities over a valid threshold m = 3(2n+1), n >= 1.
// Everything here is integer arithmetic with no tolerance: an identity either
// holds or the run aborts with a theorem violation.
namespace cocoon {

inline bool is_valid_threshold(std::uint64_t m) { return m >= 9 && m % 6 == 3; }

inline void require_valid_threshold(std::uint64_t m) {
    if (!is_valid_threshold(m))
        throw DomainError("m must equal 3(2n+1), n >= 1 (an odd multiple of 3, >= 9); got " +
                          std::to_string(m));
}

struct CensusReport {
    std::uint64_t m = 0;  // valid threshold
    std::uint64_t t = 0;  // odd composites <= m
    std::uint64_t a2 = 0; // adjacent pairs with gap 2
    std::uint64_t a4 = 0; // adjacent pairs with gap 4
    std::uint64_t a6 = 0; // adjacent pairs with gap 6
    std::uint64_t pi = 0; // primes <= m, derived as 4 + a4 + 2*a6
};

struct IdentityCheck {
    std::string_view name;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool pass() const { return lhs == rhs; }
};

// The seven exact identities tying m, T(m), |A2|, |A4|, |A6| and pi(m)
// together. Signed arithmetic so a broken count shows up as a mismatch, not
// as wraparound.
inline std::array<IdentityCheck, 7> evaluate_identities(const CensusReport& r) {
    const auto m = static_cast<std::int64_t>(r.m);
    const auto t = static_cast<std::int64_t>(r.t);
    const auto a2 = static_cast<std::int64_t>(r.a2);
    const auto a4 = static_cast<std::int64_t>(r.a4);
    const auto a6 = static_cast<std::int64_t>(r.a6);
    const auto pi = static_cast<std::int64_t>(r.pi);
    return {{
        {"pair_partition", t, 1 + a2 + a4 + a6},
        {"prime_count", pi, 4 + a4 + 2 * a6},
        {"gap2_count", a2, (m - 9) / 2 - 3 * a6 - 2 * a4},
        {"even_count", (m + 1) / 2, 5 + 3 * a6 + 2 * a4 + a2},
        {"odd_split", pi + t, (m + 1) / 2},
        {"twin_identity", 4 * a6 + 7, m - 2 * (t + a4)},
        {"isolated_identity", 2 * a4 + 7, m - 2 * (t + 2 * a6)},
    }};
}

inline void validate(const CensusReport& r) {
    for (const IdentityCheck& check : evaluate_identities(r))
        if (!check.pass())
            throw TheoremViolation("identity " + std::string(check.name) + " fails at m=" +
                                   std::to_string(r.m) + ": " + std::to_string(check.lhs) +
                                   " != " + std::to_string(check.rhs));
}

// Walk one enumeration and emit an invariant-checked CensusReport at every
// valid threshold m <= list.limit(), ascending. Every valid m is itself an
// odd composite, so each one is hit exactly when the walk reaches it.
template <typename Fn>
void for_each_census(const CocoonList& list, Fn&& emit) {
    const auto& values = list.values();
    if (values.empty())
        throw DomainError("for_each_census: cocoon list is empty");
    CensusReport r;
    r.t = 1; // the first cocoon, 9
    auto emit_if_valid = [&](std::uint64_t v) {
        if (v % 6 == 3) {
            r.m = v;
            r.pi = 4 + r.a4 + 2 * r.a6;
            validate(r);
            emit(static_cast<const CensusReport&>(r));
        }
    };
    emit_if_valid(values.front());
    for_each_pair(list, [&](const CocoonPair& pair) {
        switch (pair.gap()) {
        case 2: ++r.a2; break;
        case 4: ++r.a4; break;
        default: ++r.a6; break;
        }
        ++r.t;
        emit_if_valid(pair.hi);
    });
}

// Full census at one threshold.
inline CensusReport census(std::uint64_t m, const EnumerateOptions& opts = {}) {
    require_valid_threshold(m);
    const CocoonList list = odd_composites(m, opts);
    CensusReport last;
    for_each_census(list, [&](const CensusReport& r) { last = r; });
    // m is a multiple of 3, hence the final cocoon and the final report.
    if (last.m != m)
        throw TheoremViolation("census: sweep did not end at m=" + std::to_string(m));
    return last;
}

// pi(n) from the count t of odd composites <= n: (n+1)/2 - t for odd n,
// n/2 - t for even n. Fails below 2 (1 is neither prime nor composite), so
// n >= 2 is required.
inline std::uint64_t pi_from_parity(std::uint64_t n, std::uint64_t t) {
    if (n < 2)
        throw DomainError("pi_from_parity: n must be >= 2, got " + std::to_string(n));
    return (n % 2 == 1 ? (n + 1) / 2 : n / 2) - t;
}

struct IdentityReport {
    std::uint64_t m = 0;
    std::array<IdentityCheck, 7> checks{};
    std::optional<std::uint64_t> oracle_pi; // set when the oracle was consulted
    bool oracle_match = true;               // vacuously true without the oracle
    bool all_pass() const {
        for (const IdentityCheck& c : checks)
            if (!c.pass())
                return false;
        return oracle_match;
    }
};

// Evaluate every identity at m; with use_oracle, additionally compare pi and
// the reconstructed prime set against the independent sieve.
inline IdentityReport verify_identities(std::uint64_t m, bool use_oracle,
                                        const EnumerateOptions& opts = {}) {
    require_valid_threshold(m);
    const CocoonList list = odd_composites(m, opts);
    CensusReport last;
    for_each_census(list, [&](const CensusReport& r) { last = r; });

    IdentityReport report;
    report.m = m;
    report.checks = evaluate_identities(last);
    if (use_oracle) {
        const oracle::SieveTable sieve(m);
        report.oracle_pi = sieve.prime_count();
        report.oracle_match = (last.pi == *report.oracle_pi) &&
                              (reconstruct_primes(classify(list)) == sieve.primes());
    }
    return report;
}

} // namespace cocoon
