#include <catch2/catch_amalgamated.hpp>

#include "cocoon/oracle.hpp"
#include "cocoon/residue_tables.hpp"

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cocoon;

TEST_CASE("catalog holds exactly the eleven forms, in canonical order") {
    const auto& forms = list_forms();
    REQUIRE(forms.size() == 11);

    const std::vector<std::pair<int, int>> expected_digits = {
        {1, 1}, {3, 7}, {9, 9}, // products ending 1
        {1, 3}, {7, 9},         // ending 3
        {5, 5},                 // ending 5 (collapsed)
        {1, 7}, {3, 9},         // ending 7
        {1, 9}, {3, 3}, {7, 7}, // ending 9
    };
    for (std::size_t i = 0; i < forms.size(); ++i) {
        CHECK(forms[i].last_digit_a == expected_digits[i].first);
        CHECK(forms[i].last_digit_b == expected_digits[i].second);
        CHECK((forms[i].last_digit_a * forms[i].last_digit_b) % 10 ==
              forms[i].product_last_digit);
        // index starts at 1 exactly for residue-1 factors
        CHECK(forms[i].min_index_a == (forms[i].last_digit_a == 1 ? 1 : 0));
        CHECK(forms[i].min_index_b == (forms[i].last_digit_b == 1 ? 1 : 0));
    }

    // stable across calls
    CHECK(&list_forms() == &forms);
}

TEST_CASE("catalog spot checks") {
    const auto& forms = list_forms();
    const ProductForm& one_seven = forms[6];
    CHECK(one_seven.last_digit_a == 1);
    CHECK(one_seven.last_digit_b == 7);
    CHECK(one_seven.min_index_a == 1);
    CHECK(one_seven.min_index_b == 0);

    const ProductForm& three_nine = forms[7];
    CHECK(three_nine.min_index_a == 0);
    CHECK(three_nine.min_index_b == 0);

    CHECK(forms[5].collapsed_multiple_of_five());
}

TEST_CASE("enumerate_form examples") {
    const auto& forms = list_forms();
    CHECK(enumerate_form(forms[6], 100) == std::vector<std::uint64_t>{77});  // 11*7
    CHECK(enumerate_form(forms[7], 30) == std::vector<std::uint64_t>{27});   // 3*9
    CHECK(enumerate_form(forms[9], 10) == std::vector<std::uint64_t>{9});    // 3*3
    CHECK(enumerate_form(forms[5], 35) == std::vector<std::uint64_t>{15, 25, 35});
    CHECK(enumerate_form(forms[0], 100).empty()); // 11*11 = 121 > 100
    CHECK_THROWS_AS(enumerate_form(forms[0], 8), DomainError);
}

TEST_CASE("every form emits odd composites with the right last digit") {
    const oracle::SieveTable sieve(5000);
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::uint64_t> pick_limit(9, 5000);
    for (int round = 0; round < 20; ++round) {
        const std::uint64_t limit = pick_limit(rng);
        for (const ProductForm& form : list_forms()) {
            std::uint64_t prev = 0;
            for (std::uint64_t p : enumerate_form(form, limit)) {
                REQUIRE(p > prev);
                REQUIRE(p <= limit);
                REQUIRE(p % 2 == 1);
                REQUIRE(p % 10 == static_cast<std::uint64_t>(form.product_last_digit));
                REQUIRE_FALSE(sieve.is_prime(p));
                prev = p;
            }
        }
    }
}

TEST_CASE("odd_composites examples") {
    CHECK(odd_composites(35).values() ==
          std::vector<std::uint64_t>{9, 15, 21, 25, 27, 33, 35});
    CHECK(odd_composites(9).values() == std::vector<std::uint64_t>{9});
    CHECK(odd_composites(10000).count() ==
          5000 - oracle::sieve_primes(10000).prime_count());
    CHECK_THROWS_AS(odd_composites(8), DomainError);
}

TEST_CASE("odd_composites equals the oracle for every limit up to 1500") {
    // One oracle sieve; slice it per limit.
    const auto all = oracle::odd_composites(1500);
    for (std::uint64_t limit = 9; limit <= 1500; ++limit) {
        std::vector<std::uint64_t> expected;
        for (std::uint64_t p : all) {
            if (p > limit)
                break;
            expected.push_back(p);
        }
        REQUIRE(odd_composites(limit).values() == expected);
    }
}

TEST_CASE("odd_composites equals the oracle at 10^5") {
    REQUIRE(odd_composites(100000).values() == oracle::odd_composites(100000));
}

TEST_CASE("enumeration is identical across thread counts") {
    for (std::uint64_t limit : {9ull, 35ull, 99999ull, 100000ull}) {
        const CocoonList sequential = odd_composites(limit, {.threads = 1});
        const CocoonList parallel = odd_composites(limit, {.threads = 4});
        REQUIRE(sequential.values() == parallel.values());
        REQUIRE(sequential.words() == parallel.words());
    }
}

TEST_CASE("memory cap rejects oversized limits") {
    EnumerateOptions opts;
    opts.memory_cap_bytes = 1024; // admits limits up to 16384
    CHECK_NOTHROW(odd_composites(16384, opts));
    CHECK_THROWS_AS(odd_composites(16385, opts), MemoryCapError);
    CHECK_THROWS_AS(odd_composites(1u << 20, opts), MemoryCapError);
}

TEST_CASE("is_member answers in constant time from the bit array") {
    const CocoonList list = odd_composites(35);
    CHECK(list.is_member(25));
    CHECK_FALSE(list.is_member(11)); // prime
    CHECK_FALSE(list.is_member(10)); // even
    CHECK_FALSE(list.is_member(1));
    CHECK_FALSE(list.is_member(7));
    CHECK(list.is_member(35));
    CHECK_THROWS_AS(list.is_member(36), DomainError);
}

TEST_CASE("bit dump writes the documented header and payload") {
    const std::string blob = [] {
        std::ostringstream os(std::ios::binary);
        save_bits(odd_composites(15), os);
        return os.str();
    }();
    // 16-byte header + one payload byte for the 8 odd numbers <= 15
    REQUIRE(blob.size() == 17);
    CHECK(blob.substr(0, 4) == "COCN");
    const std::string version_le{'\x01', '\x00', '\x00', '\x00'};
    CHECK(blob.substr(4, 4) == version_le);
    const std::string limit_le{'\x0f', '\x00', '\x00', '\x00', '\x00', '\x00', '\x00', '\x00'};
    CHECK(blob.substr(8, 8) == limit_le);
    // members 9 and 15 sit at bit indices 4 and 7
    CHECK(static_cast<unsigned char>(blob[16]) == 0x90);
}

TEST_CASE("bit dump round-trips") {
    for (std::uint64_t limit : {9ull, 35ull, 4096ull, 9999ull}) {
        const CocoonList original = odd_composites(limit);
        std::stringstream buffer(std::ios::in | std::ios::out | std::ios::binary);
        save_bits(original, buffer);
        const CocoonList restored = load_bits(buffer);
        REQUIRE(restored.limit() == original.limit());
        REQUIRE(restored.values() == original.values());
    }
}

TEST_CASE("bit dump load rejects corrupt input") {
    std::stringstream bad_magic(std::string("NOPE") + std::string(13, '\0'));
    CHECK_THROWS_AS(load_bits(bad_magic), DomainError);

    std::stringstream truncated;
    save_bits(odd_composites(9999), truncated);
    std::string bytes = truncated.str();
    bytes.resize(bytes.size() / 2);
    std::stringstream half(bytes);
    CHECK_THROWS_AS(load_bits(half), DomainError);
}

TEST_CASE("from_values validates shape") {
    CHECK_NOTHROW(CocoonList::from_values(35, {9, 15, 21, 25, 27, 33, 35}));
    CHECK_THROWS_AS(CocoonList::from_values(35, {9, 15, 14}), DomainError);  // even
    CHECK_THROWS_AS(CocoonList::from_values(35, {15, 9}), DomainError);      // not increasing
    CHECK_THROWS_AS(CocoonList::from_values(35, {7, 9}), DomainError);       // below 9
    CHECK_THROWS_AS(CocoonList::from_values(35, {9, 37}), DomainError);      // beyond limit
}
