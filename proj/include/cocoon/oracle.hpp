#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cocoon/errors.hpp"

// Ground truth for everything the residue tables claim. A textbook
// composite-marking sieve, kept deliberately plain (odd-only storage and
// nothing else) and sharing no enumeration logic with residue_tables.hpp:
// it is the referee, not the contender.
namespace cocoon::oracle {

class SieveTable {
public:
    explicit SieveTable(std::uint64_t limit) : limit_(limit) {
        if (limit < 2)
            throw DomainError("sieve_primes: limit must be >= 2, got " + std::to_string(limit));
        if (limit >= 3) {
            // flag index (n - 3) / 2 for odd n in [3, limit]
            odd_prime_.assign((limit - 3) / 2 + 1, 1);
            for (std::uint64_t f = 3; f * f <= limit; f += 2) {
                if (!odd_prime_[(f - 3) / 2])
                    continue;
                for (std::uint64_t q = f * f; q <= limit; q += 2 * f)
                    odd_prime_[(q - 3) / 2] = 0;
            }
        }
    }

    std::uint64_t limit() const { return limit_; }

    // n may be anything <= limit, including 0 and 1.
    bool is_prime(std::uint64_t n) const {
        if (n > limit_)
            throw DomainError("SieveTable::is_prime: n exceeds sieve limit");
        if (n == 2)
            return true;
        if (n < 2 || n % 2 == 0)
            return false;
        return odd_prime_[(n - 3) / 2] != 0;
    }

    std::uint64_t prime_count() const {
        std::uint64_t count = limit_ >= 2 ? 1 : 0; // the prime 2
        for (std::uint8_t f : odd_prime_)
            count += f;
        return count;
    }

    std::vector<std::uint64_t> primes() const {
        std::vector<std::uint64_t> out;
        if (limit_ >= 2)
            out.push_back(2);
        for (std::uint64_t i = 0; i < odd_prime_.size(); ++i)
            if (odd_prime_[i])
                out.push_back(2 * i + 3);
        return out;
    }

private:
    std::uint64_t limit_;
    std::vector<std::uint8_t> odd_prime_;
};

inline SieveTable sieve_primes(std::uint64_t limit) { return SieveTable(limit); }

// All odd composite numbers in [9, limit], ascending.
inline std::vector<std::uint64_t> odd_composites(std::uint64_t limit) {
    if (limit < 9)
        throw DomainError("oracle::odd_composites: limit must be >= 9, got " +
                          std::to_string(limit));
    SieveTable sieve(limit);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 9; p <= limit; p += 2)
        if (!sieve.is_prime(p))
            out.push_back(p);
    return out;
}

// All pairs (p, p+2) with both members prime and p+2 <= limit.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> twin_pairs(std::uint64_t limit) {
    if (limit < 5)
        throw DomainError("oracle::twin_pairs: limit must be >= 5, got " + std::to_string(limit));
    SieveTable sieve(limit);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t p = 3; p + 2 <= limit; p += 2)
        if (sieve.is_prime(p) && sieve.is_prime(p + 2))
            out.emplace_back(p, p + 2);
    return out;
}

} // namespace cocoon::oracle
