#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <string>

namespace k3tk {

using big_int = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return rational(big_int(num), big_int(den));
}

inline big_int numerator_of(const rational& x) { return boost::multiprecision::numerator(x); }
inline big_int denominator_of(const rational& x) { return boost::multiprecision::denominator(x); }

inline double to_double(const rational& x) { return x.convert_to<double>(); }

inline std::string to_string(const big_int& x) { return x.str(); }

/// Floor of a rational as an int64 (callers only use small values).
inline std::int64_t floor_int(const rational& x) {
    big_int n = numerator_of(x);
    big_int d = denominator_of(x);
    big_int q = n / d;
    if (n % d != 0 && n < 0) q -= 1;
    return q.convert_to<std::int64_t>();
}

inline std::int64_t ceil_int(const rational& x) { return -floor_int(-x); }

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace k3tk
