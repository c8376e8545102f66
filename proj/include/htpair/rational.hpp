#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace htpair {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// x*(x-1)/2 for integer x >= 0
inline BigInt binom2(const BigInt& x) { return x * (x - 1) / 2; }
inline long long binom2_ll(long long x) { return x * (x - 1) / 2; }

// continuous extension of (x choose 2)
inline Rational binom2(const Rational& x) { return x * (x - 1) / 2; }

inline BigInt binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
    return r.str();  // "p/q" or "p"
}

// parses "p", "p/q"
Rational rational_from_string(const std::string& s);

}  // namespace htpair
