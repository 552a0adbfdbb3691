#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace canram {

// Exact rational arithmetic for distance data. boost::rational keeps values
// normalized (gcd 1, positive denominator), which matches the wire format.
using Rational = boost::rational<long long>;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace canram
