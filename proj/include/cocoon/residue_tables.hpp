#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cocoon/errors.hpp"

// Residue-class product tables: the generators of all odd composite numbers.
//
// Every odd composite p >= 9 is a product of two odd factors >= 3, and each
// factor ends in 1, 3, 5, 7 or 9. Of the fifteen unordered last-digit pairs,
// the five involving a factor ending in 5 all produce multiples of five and
// collapse into the single relation 5*(2k+1), k >= 1. That leaves eleven
// product forms, grouped by the last digit of the product:
//
//   ends 1:  1x1  3x7  9x9
//   ends 3:  1x3  7x9
//   ends 5:  5*(2k+1)            (the collapsed form)
//   ends 7:  1x7  3x9
//   ends 9:  1x9  3x3  7x7
//
// A factor ending in 1 starts at 11 (index 1), never at 1 itself — otherwise
// every odd number would be "composite". All other residues start at their
// digit (index 0). The catalog below is reconstructed from this last-digit
// arithmetic; the union of the eleven enumerations is exactly the set of odd
// composites, which the test suite checks element-by-element against an
// independent sieve.
namespace cocoon {

struct ProductForm {
    int last_digit_a;       // in {1,3,5,7,9}
    int last_digit_b;       // in {1,3,5,7,9}
    int min_index_a;        // 1 iff last_digit_a == 1
    int min_index_b;        // 1 iff last_digit_b == 1
    int product_last_digit; // (last_digit_a * last_digit_b) % 10

    // The ending-5 form is the one collapsed relation; it enumerates every
    // odd multiple of five >= 15 rather than a two-factor grid.
    constexpr bool collapsed_multiple_of_five() const { return product_last_digit == 5; }
};

// The fixed catalog, in canonical order (products ending 1, 3, 5, 7, 9).
inline const std::array<ProductForm, 11>& list_forms() {
    static constexpr std::array<ProductForm, 11> forms = {{
        {1, 1, 1, 1, 1},
        {3, 7, 0, 0, 1},
        {9, 9, 0, 0, 1},
        {1, 3, 1, 0, 3},
        {7, 9, 0, 0, 3},
        {5, 5, 0, 0, 5},
        {1, 7, 1, 0, 7},
        {3, 9, 0, 0, 7},
        {1, 9, 1, 0, 9},
        {3, 3, 0, 0, 9},
        {7, 7, 0, 0, 9},
    }};
    return forms;
}

namespace detail {

// Visit every product of `form` that is <= limit. Products may repeat; the
// caller handles dedup. All loop bounds use division so nothing overflows
// even for limits near the top of uint64.
template <typename Emit>
void visit_form_products(const ProductForm& form, std::uint64_t limit, Emit&& emit) {
    if (form.collapsed_multiple_of_five()) {
        for (std::uint64_t q = 3; q <= limit / 5; q += 2)
            emit(5 * q);
        return;
    }
    const std::uint64_t a0 = 10 * static_cast<std::uint64_t>(form.min_index_a) + form.last_digit_a;
    const std::uint64_t b0 = 10 * static_cast<std::uint64_t>(form.min_index_b) + form.last_digit_b;
    if (form.last_digit_a == form.last_digit_b) {
        // Equal residues: enumerate ordered pairs f1 <= f2 only.
        for (std::uint64_t f1 = a0; f1 <= limit / f1; f1 += 10) {
            const std::uint64_t f2_max = limit / f1;
            for (std::uint64_t f2 = f1; f2 <= f2_max; f2 += 10)
                emit(f1 * f2);
        }
    } else {
        for (std::uint64_t f1 = a0; f1 <= limit / b0; f1 += 10) {
            const std::uint64_t f2_max = limit / f1;
            for (std::uint64_t f2 = b0; f2 <= f2_max; f2 += 10)
                emit(f1 * f2);
        }
    }
}

} // namespace detail

// All products of one form that are <= limit, deduplicated and ascending.
inline std::vector<std::uint64_t> enumerate_form(const ProductForm& form, std::uint64_t limit) {
    if (limit < 9)
        throw DomainError("enumerate_form: limit must be >= 9, got " + std::to_string(limit));
    std::vector<std::uint64_t> out;
    detail::visit_form_products(form, limit, [&](std::uint64_t p) { out.push_back(p); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Default memory cap admits limits up to 2^31; the bit array over odd numbers
// costs limit/16 bytes.
inline constexpr std::uint64_t kDefaultMemoryCapBytes = (std::uint64_t{1} << 31) / 16;

struct EnumerateOptions {
    unsigned threads = 1;
    std::uint64_t memory_cap_bytes = kDefaultMemoryCapBytes;
};

// The sorted, deduplicated sequence of odd composite numbers <= limit, with
// constant-time membership through a bit array indexed by (p-1)/2 over odd p.
class CocoonList {
public:
    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& values() const { return values_; }
    std::uint64_t count() const { return values_.size(); }

    // True iff p is an odd composite number. p must not exceed limit.
    bool is_member(std::uint64_t p) const {
        if (p > limit_)
            throw DomainError("CocoonList::is_member: " + std::to_string(p) +
                              " exceeds limit " + std::to_string(limit_));
        if (p % 2 == 0)
            return false;
        const std::uint64_t idx = (p - 1) / 2;
        return (words_[idx / 64] >> (idx % 64)) & 1u;
    }

    // Number of bit slots: one per odd p <= limit.
    std::uint64_t bit_count() const { return (limit_ + 1) / 2; }
    const std::vector<std::uint64_t>& words() const { return words_; }

    // Assemble a list from known values (deserialization, tests). Validates
    // ordering, oddness and range — not compositeness; classify() and the
    // identity checks will catch a fabricated member downstream.
    static CocoonList from_values(std::uint64_t limit, std::vector<std::uint64_t> values) {
        if (limit < 9)
            throw DomainError("CocoonList::from_values: limit must be >= 9");
        CocoonList list;
        list.limit_ = limit;
        list.words_.assign((list.bit_count() + 63) / 64, 0);
        std::uint64_t prev = 0;
        for (std::uint64_t p : values) {
            if (p < 9 || p > limit || p % 2 == 0 || p <= prev)
                throw DomainError("CocoonList::from_values: values must be odd, >= 9, "
                                  "strictly increasing and <= limit");
            const std::uint64_t idx = (p - 1) / 2;
            list.words_[idx / 64] |= std::uint64_t{1} << (idx % 64);
            prev = p;
        }
        list.values_ = std::move(values);
        return list;
    }

private:
    friend CocoonList odd_composites(std::uint64_t, const EnumerateOptions&);
    friend CocoonList load_bits(std::istream&);

    CocoonList() = default;

    // Rebuild values_ from the bit array (ascending scan, word at a time).
    void collect_values() {
        values_.clear();
        for (std::uint64_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word != 0) {
                const int bit = std::countr_zero(word);
                values_.push_back(2 * (64 * w + static_cast<std::uint64_t>(bit)) + 1);
                word &= word - 1;
            }
        }
    }

    std::uint64_t limit_ = 0;
    std::vector<std::uint64_t> values_;
    std::vector<std::uint64_t> words_; // bit (p-1)/2, LSB first
};

// Union of all eleven form enumerations: every odd composite <= limit.
// With threads > 1 the forms are fanned out to workers that OR bits into the
// shared array; OR commutes, so the result is bit-identical to the
// single-threaded build regardless of schedule.
inline CocoonList odd_composites(std::uint64_t limit, const EnumerateOptions& opts = {}) {
    if (limit < 9)
        throw DomainError("odd_composites: limit must be >= 9, got " + std::to_string(limit));
    const std::uint64_t bits = (limit + 1) / 2;
    const std::uint64_t bytes = (bits + 7) / 8;
    if (bytes > opts.memory_cap_bytes)
        throw MemoryCapError("odd_composites: bit array needs " + std::to_string(bytes) +
                             " bytes, over the cap of " + std::to_string(opts.memory_cap_bytes) +
                             " (raise COCOON_MEMORY_CAP to allow larger limits)");

    CocoonList list;
    list.limit_ = limit;
    list.words_.assign((bits + 63) / 64, 0);

    const auto& forms = list_forms();
    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        for (const ProductForm& form : forms)
            detail::visit_form_products(form, limit, [&](std::uint64_t p) {
                const std::uint64_t idx = (p - 1) / 2;
                list.words_[idx / 64] |= std::uint64_t{1} << (idx % 64);
            });
    } else {
        std::atomic<unsigned> next_form{0};
        std::uint64_t* words = list.words_.data();
        auto worker = [&]() {
            for (;;) {
                const unsigned f = next_form.fetch_add(1, std::memory_order_relaxed);
                if (f >= forms.size())
                    return;
                detail::visit_form_products(forms[f], limit, [&](std::uint64_t p) {
                    const std::uint64_t idx = (p - 1) / 2;
                    std::atomic_ref<std::uint64_t> word(words[idx / 64]);
                    word.fetch_or(std::uint64_t{1} << (idx % 64), std::memory_order_relaxed);
                });
            }
        };
        std::vector<std::thread> pool;
        const unsigned n = std::min<unsigned>(threads, forms.size());
        pool.reserve(n);
        for (unsigned i = 0; i < n; ++i)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }

    list.collect_values();
    return list;
}

// --- binary dump of the bit array ------------------------------------------
//
// 16-byte header, little-endian: magic "COCN", version u32, limit u64.
// Then ceil(bit_count/8) raw bytes, least-significant-bit first, bit index
// (p-1)/2.

inline constexpr std::uint32_t kBitsDumpVersion = 1;

inline void save_bits(const CocoonList& list, std::ostream& os) {
    char header[16];
    std::memcpy(header, "COCN", 4);
    const std::uint32_t version = kBitsDumpVersion;
    const std::uint64_t limit = list.limit();
    for (int i = 0; i < 4; ++i)
        header[4 + i] = static_cast<char>((version >> (8 * i)) & 0xff);
    for (int i = 0; i < 8; ++i)
        header[8 + i] = static_cast<char>((limit >> (8 * i)) & 0xff);
    os.write(header, sizeof(header));

    const std::uint64_t bytes = (list.bit_count() + 7) / 8;
    const auto& words = list.words();
    for (std::uint64_t b = 0; b < bytes; ++b)
        os.put(static_cast<char>((words[b / 8] >> (8 * (b % 8))) & 0xff));
}

inline CocoonList load_bits(std::istream& is) {
    char header[16];
    is.read(header, sizeof(header));
    if (!is || std::memcmp(header, "COCN", 4) != 0)
        throw DomainError("load_bits: missing COCN magic");
    std::uint32_t version = 0;
    std::uint64_t limit = 0;
    for (int i = 0; i < 4; ++i)
        version |= static_cast<std::uint32_t>(static_cast<unsigned char>(header[4 + i])) << (8 * i);
    for (int i = 0; i < 8; ++i)
        limit |= static_cast<std::uint64_t>(static_cast<unsigned char>(header[8 + i])) << (8 * i);
    if (version != kBitsDumpVersion)
        throw DomainError("load_bits: unsupported version " + std::to_string(version));
    if (limit < 9)
        throw DomainError("load_bits: corrupt limit field");

    CocoonList list;
    list.limit_ = limit;
    const std::uint64_t bits = (limit + 1) / 2;
    const std::uint64_t bytes = (bits + 7) / 8;
    list.words_.assign((bits + 63) / 64, 0);
    for (std::uint64_t b = 0; b < bytes; ++b) {
        const int c = is.get();
        if (c == std::char_traits<char>::eof())
            throw DomainError("load_bits: truncated bit array");
        list.words_[b / 8] |= static_cast<std::uint64_t>(static_cast<unsigned char>(c))
                              << (8 * (b % 8));
    }
    list.collect_values();
    return list;
}

} // namespace cocoon
