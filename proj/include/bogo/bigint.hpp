#pragma once
// Arbitrary-precision integers and a few exact helpers shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <tuple>

namespace bogo {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& x) { return x.str(); }

inline bool fits_int64(const BigInt& x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

// Generalised binomial coefficient C(n, k) for any integer n and k >= 0.
BigInt binomial(const BigInt& n, int k);

// Floor division and the matching non-negative remainder.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt mod_floor(const BigInt& a, const BigInt& b);

// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
std::tuple<BigInt, BigInt, BigInt> ext_gcd(const BigInt& a, const BigInt& b);

BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace bogo
