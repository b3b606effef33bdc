#include "bogo/bigint.hpp"

#include <stdexcept>

namespace bogo {

BigInt binomial(const BigInt& n, int k) {
  if (k < 0) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (n - i);
    den *= (i + 1);
  }
  return num / den;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("floor_div by zero");
  BigInt q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt mod_floor(const BigInt& a, const BigInt& b) { return a - floor_div(a, b) * b; }

std::tuple<BigInt, BigInt, BigInt> ext_gcd(const BigInt& a, const BigInt& b) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  return {r0, s0, t0};
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = std::get<0>(ext_gcd(a, b));
  BigInt r = a / g * b;
  return r < 0 ? BigInt(-r) : r;
}

}  // namespace bogo
