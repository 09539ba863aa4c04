#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace brick {

// Exact arithmetic everywhere: path counts grow geometrically (already ~3^(l/2)
// at width 4), so fixed-width integers overflow near l ~ 40.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, k) in exact arithmetic; 0 when k < 0 or k > n.
Int binomial(long n, long k);

}  // namespace brick
