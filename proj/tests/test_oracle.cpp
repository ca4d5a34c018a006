#include <catch2/catch_amalgamated.hpp>

#include "cocoon/oracle.hpp"

#include <cstdint>
#include <vector>

using namespace cocoon;

namespace {

// Trial division: the oracle's own referee. Shares nothing with the sieve.
bool trial_division_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

} // namespace

TEST_CASE("sieve matches trial division on every n up to 20000") {
    const oracle::SieveTable sieve(20000);
    for (std::uint64_t n = 0; n <= 20000; ++n)
        REQUIRE(sieve.is_prime(n) == trial_division_prime(n));
}

TEST_CASE("sieve prime counts") {
    CHECK(oracle::sieve_primes(10).prime_count() == 4);
    CHECK(oracle::sieve_primes(30).prime_count() == 10);
    CHECK(oracle::sieve_primes(2).prime_count() == 1);
    CHECK(oracle::sieve_primes(1000000).prime_count() == 78498);
}

TEST_CASE("sieve rejects limits below 2") {
    CHECK_THROWS_AS(oracle::sieve_primes(1), DomainError);
    CHECK_THROWS_AS(oracle::sieve_primes(0), DomainError);
}

TEST_CASE("primes() lists exactly the flagged numbers") {
    const auto primes = oracle::sieve_primes(30).primes();
    CHECK(primes == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("oracle odd composites") {
    CHECK(oracle::odd_composites(35) ==
          std::vector<std::uint64_t>{9, 15, 21, 25, 27, 33, 35});
    CHECK(oracle::odd_composites(9) == std::vector<std::uint64_t>{9});
    // odd numbers <= 100, minus the unit, minus the odd primes
    const auto composites = oracle::odd_composites(100);
    CHECK(composites.size() == 50 - oracle::sieve_primes(100).prime_count());
    CHECK_THROWS_AS(oracle::odd_composites(8), DomainError);
}

TEST_CASE("oracle twin pairs") {
    using Twin = std::pair<std::uint64_t, std::uint64_t>;
    CHECK(oracle::twin_pairs(13) == std::vector<Twin>{{3, 5}, {5, 7}, {11, 13}});
    CHECK(oracle::twin_pairs(21) == std::vector<Twin>{{3, 5}, {5, 7}, {11, 13}, {17, 19}});
    CHECK(oracle::twin_pairs(9) == std::vector<Twin>{{3, 5}, {5, 7}});
    CHECK_THROWS_AS(oracle::twin_pairs(4), DomainError);
}

TEST_CASE("is_prime rejects queries beyond the sieve limit") {
    const oracle::SieveTable sieve(100);
    CHECK_THROWS_AS(sieve.is_prime(101), DomainError);
}
