#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace qrdeg {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& x) { return x.str(); }

inline BigInt pow_big(const BigInt& base, std::uint64_t e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

inline BigRational pow_rat(const BigRational& base, std::uint64_t e) {
    return BigRational(pow_big(boost::multiprecision::numerator(base), e),
                       pow_big(boost::multiprecision::denominator(base), e));
}

/// Natural log of a positive big integer, accurate to double precision even past 1e308.
inline double ln_big(const BigInt& x) {
    if (x <= 0) return -INFINITY;
    std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 1000) return std::log(x.convert_to<double>());
    std::size_t shift = bits - 64;
    BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + double(shift) * std::log(2.0);
}

inline double ln_rat(const BigRational& x) {
    return ln_big(boost::multiprecision::numerator(x)) - ln_big(boost::multiprecision::denominator(x));
}

inline double to_double(const BigRational& x) { return std::exp(ln_rat(x)); }

/// Parses "P/Q" with positive integers; rejects decimals and anything else.
inline bool parse_fraction(const std::string& s, std::int64_t& num, std::int64_t& den) {
    auto slash = s.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == s.size()) return false;
    auto digits = [](const std::string& t) {
        if (t.empty() || t.size() > 18) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!digits(a) || !digits(b)) return false;
    num = std::stoll(a);
    den = std::stoll(b);
    return num > 0 && den > 0;
}

enum class Verdict { Less, Equal, Greater, Indeterminate };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Less: return "less";
    case Verdict::Equal: return "equal";
    case Verdict::Greater: return "greater";
    default: return "indeterminate";
    }
}

/// Compares ln(a)/ln(b) with ln(c)/ln(d) for integers a,c >= 1 and b,d >= 2.
///
/// Decided in floating point outside a relative guard band. Inside the band, equality is
/// proven when a^s = c^t and b^s = d^t for some small s, t; otherwise the answer is
/// Indeterminate.
inline Verdict compare_log_ratios(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d,
                                  double band = 1e-9) {
    double x = ln_big(a) / ln_big(b), y = ln_big(c) / ln_big(d);
    double scale = std::max({std::fabs(x), std::fabs(y), 1e-300});
    if (x < y && (y - x) > band * scale) return Verdict::Less;
    if (x > y && (x - y) > band * scale) return Verdict::Greater;
    if (a == 1 && c == 1) return Verdict::Equal;
    for (std::uint64_t s = 1; s <= 12; ++s)
        for (std::uint64_t t = 1; t <= 12; ++t)
            if (pow_big(a, s) == pow_big(c, t) && pow_big(b, s) == pow_big(d, t)) return Verdict::Equal;
    return Verdict::Indeterminate;
}

} // namespace qrdeg
