#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hypertile {

// Exact arithmetic carrier for the closed-form parameters. cpp_rational keeps
// gcd-reduced form with positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial_exact(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// C(a, b) with the convention C(a, b) = 0 for a < b or b < 0; the closed
// forms here freely use binomials with a < b.
inline BigInt binomial_exact(int a, int b) {
    if (b < 0 || a < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    BigInt r = 1;
    for (int i = 1; i <= b; ++i) {
        r *= (a - b + i);
        r /= i;
    }
    return r;
}

inline BigInt falling_factorial(int a, int b) {
    BigInt r = 1;
    for (int i = 0; i < b; ++i) r *= (a - i);
    return r;
}

inline std::string to_fraction_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace hypertile
