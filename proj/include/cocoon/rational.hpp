#pragma once

#include <cstdio>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cocoon {

// Exact rational with arbitrary-precision numerator/denominator, always kept
// reduced. Floating point appears only in rendering helpers, never in the
// arithmetic itself.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) {
    return boost::multiprecision::numerator(r);
}

inline BigInt denominator(const Rational& r) {
    return boost::multiprecision::denominator(r);
}

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    return Rational(BigInt(num), BigInt(den));
}

// 12 significant digits — the precision of every float column we emit.
inline std::string float12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

inline std::string float12(const Rational& r) {
    return float12(r.convert_to<double>());
}

} // namespace cocoon
