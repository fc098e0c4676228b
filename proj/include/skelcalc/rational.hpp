#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace skc {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;

// "p" for integers, "p/q" otherwise, always reduced.
std::string qstr(const Q& q);

// Accepts "p", "-p", "p/q". Throws Error(ParseError) on anything else.
Q parse_q(const std::string& s);

inline Q qabs(const Q& q) { return q < 0 ? Q(-q) : q; }
inline bool is_int(const Q& q) { return boost::multiprecision::denominator(q) == 1; }
inline Z num(const Q& q) { return boost::multiprecision::numerator(q); }
inline Z den(const Q& q) { return boost::multiprecision::denominator(q); }

}  // namespace skc
