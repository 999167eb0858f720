#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gwseries {

// GMP rationals are kept canonical (reduced, positive denominator) by every
// arithmetic operator, which is exactly the invariant we need.
using Rational = mpq_class;

// Accepts "p" or "p/q" with optional sign on p; q must be positive.
Rational parse_rational(std::string_view text);

// Integers print without a denominator.
std::string to_string(const Rational& q);

Rational factorial(unsigned n);

inline Rational sign_power(long long exponent) {
    return (exponent % 2 == 0) ? Rational(1) : Rational(-1);
}

} // namespace gwseries
