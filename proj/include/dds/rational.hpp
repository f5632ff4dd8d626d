#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace dds {

// Exact rational arithmetic for curvature and Euler characteristics.
// Compare only Rational with Rational: boost's heterogeneous comparisons
// against a plain int recurse; use sign() or numerator() for sign tests.
using Rational = boost::rational<long long>;

inline int sign(const Rational& r) {
    return r.numerator() > 0 ? 1 : r.numerator() < 0 ? -1 : 0;
}

// Lowest-terms text form: "0", "2", "-1/20", "1/30".
inline std::string to_string(const Rational& r) {
    if (r.numerator() == 0) return "0";
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace dds
