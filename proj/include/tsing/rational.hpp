#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace tsing {

// All arithmetic in this library is exact: arbitrary-precision integers and
// rationals, never floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rat& r) { return den(r) == 1; }

// "p/q" in lowest terms, or just "p" when integral.
inline std::string format_rat(const Rat& r) {
    if (is_integral(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

} // namespace tsing
