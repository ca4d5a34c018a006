#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cocoon/census.hpp"
#include "cocoon/errors.hpp"
#include "cocoon/rational.hpp"
#include "cocoon/residue_tables.hpp"

// The two bounded sequences attached to each valid threshold m:
//
//   s(m)  = 1 - (2/m) * (T(m) + |A4(m)|)     (equals (4*|A6(m)| + 7) / m)
//   s~(m) = 1 - (2/m) * (T(m) + 2*|A6(m)|)   (equals (2*|A4(m)| + 7) / m)
//
// computed as exact reduced rationals, with running minima folded over the
// scan. A finite scan can only report the empirical minimum so far — never an
// infimum — so that is all this module claims.
namespace cocoon {

// (s, s~) for one census. Both lie strictly inside (0, 1); anything else
// would contradict the identities the census was validated against.
inline std::pair<Rational, Rational> s_values(const CensusReport& r) {
    const Rational one(1);
    const Rational s = one - Rational(2 * BigInt(r.t + r.a4), BigInt(r.m));
    const Rational s_tilde = one - Rational(2 * BigInt(r.t + 2 * r.a6), BigInt(r.m));
    for (const Rational* v : {&s, &s_tilde})
        if (*v <= 0 || *v >= 1)
            throw TheoremViolation("s-value out of (0,1) at m=" + std::to_string(r.m));
    return {s, s_tilde};
}

struct ScanRow {
    // census columns carried through for export
    std::uint64_t m = 0, t = 0, a2 = 0, a4 = 0, a6 = 0, pi = 0;
    Rational s;
    Rational s_tilde;
    Rational min_s;       // running minimum over valid thresholds <= m
    Rational min_s_tilde;
};

struct ScanSummary {
    std::uint64_t limit = 0;
    std::uint64_t rows_emitted = 0;
    Rational final_min_s;
    Rational final_min_s_tilde;
    std::uint64_t argmin_m_s = 0;       // first m attaining the final minimum
    std::uint64_t argmin_m_s_tilde = 0;
};

// Stream one row per valid m <= limit, all censuses taken from a single
// enumeration. The fold is sequential; running minima are order-dependent.
template <typename RowFn>
ScanSummary scan_rows(std::uint64_t limit, const EnumerateOptions& opts, RowFn&& emit) {
    if (limit < 9)
        throw DomainError("scan: limit must be >= 9, got " + std::to_string(limit));
    const CocoonList list = odd_composites(limit, opts);

    ScanSummary summary;
    summary.limit = limit;
    for_each_census(list, [&](const CensusReport& r) {
        ScanRow row;
        row.m = r.m;
        row.t = r.t;
        row.a2 = r.a2;
        row.a4 = r.a4;
        row.a6 = r.a6;
        row.pi = r.pi;
        std::tie(row.s, row.s_tilde) = s_values(r);
        if (summary.rows_emitted == 0 || row.s < summary.final_min_s) {
            summary.final_min_s = row.s;
            summary.argmin_m_s = row.m;
        }
        if (summary.rows_emitted == 0 || row.s_tilde < summary.final_min_s_tilde) {
            summary.final_min_s_tilde = row.s_tilde;
            summary.argmin_m_s_tilde = row.m;
        }
        row.min_s = summary.final_min_s;
        row.min_s_tilde = summary.final_min_s_tilde;
        ++summary.rows_emitted;
        emit(static_cast<const ScanRow&>(row));
    });
    return summary;
}

struct ScanResult {
    std::vector<ScanRow> rows;
    ScanSummary summary;
};

inline ScanResult scan(std::uint64_t limit, const EnumerateOptions& opts = {}) {
    ScanResult result;
    result.summary = scan_rows(limit, opts, [&](const ScanRow& row) {
        result.rows.push_back(row);
    });
    return result;
}

// --- export -----------------------------------------------------------------

inline constexpr std::string_view kScanCsvHeader =
    "m,t,a2,a4,a6,pi,s_num,s_den,s_float,st_num,st_den,st_float,min_s_float,min_st_float";

inline std::string scan_csv_row(const ScanRow& r) {
    std::string out;
    out += std::to_string(r.m);
    out += ',';
    out += std::to_string(r.t);
    out += ',';
    out += std::to_string(r.a2);
    out += ',';
    out += std::to_string(r.a4);
    out += ',';
    out += std::to_string(r.a6);
    out += ',';
    out += std::to_string(r.pi);
    out += ',';
    out += numerator(r.s).str();
    out += ',';
    out += denominator(r.s).str();
    out += ',';
    out += float12(r.s);
    out += ',';
    out += numerator(r.s_tilde).str();
    out += ',';
    out += denominator(r.s_tilde).str();
    out += ',';
    out += float12(r.s_tilde);
    out += ',';
    out += float12(r.min_s);
    out += ',';
    out += float12(r.min_s_tilde);
    return out;
}

// One object per row, field names matching the CSV columns.
inline std::string scan_jsonl_row(const ScanRow& r) {
    std::string out = "{";
    auto field = [&](std::string_view name, const std::string& value, bool last = false) {
        out += '"';
        out += name;
        out += "\":";
        out += value;
        if (!last)
            out += ',';
    };
    field("m", std::to_string(r.m));
    field("t", std::to_string(r.t));
    field("a2", std::to_string(r.a2));
    field("a4", std::to_string(r.a4));
    field("a6", std::to_string(r.a6));
    field("pi", std::to_string(r.pi));
    field("s_num", numerator(r.s).str());
    field("s_den", denominator(r.s).str());
    field("s_float", float12(r.s));
    field("st_num", numerator(r.s_tilde).str());
    field("st_den", denominator(r.s_tilde).str());
    field("st_float", float12(r.s_tilde));
    field("min_s_float", float12(r.min_s));
    field("min_st_float", float12(r.min_s_tilde), true);
    out += '}';
    return out;
}

} // namespace cocoon
