#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace divkum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

// g = gcd(a,b) with x*a + y*b = g, g >= 0.
Int xgcd(const Int& a, const Int& b, Int& x, Int& y);

// Floor division/remainder; rem is always in [0, |b|).
Int floor_div(const Int& a, const Int& b);
Int floor_mod(const Int& a, const Int& b);

// p-adic valuation of a != 0.
int valuation(Int a, const Int& p);

bool is_prime(const Int& n);

// (prime, exponent) pairs, trial division; meant for desk-scale inputs.
std::vector<std::pair<Int, int>> factorize(Int n);

std::vector<Int> divisors_sorted(const Int& n);

std::string to_string(const Int& a);
std::string to_string(const Rat& a);
Int parse_int(const std::string& s);
Rat parse_rat(const std::string& s);

// Rational normalized into [0, 1).
inline Rat frac_mod1(const Rat& a) {
  Int num = boost::multiprecision::numerator(a);
  Int den = boost::multiprecision::denominator(a);
  return Rat(floor_mod(num, den), den);
}

}  // namespace divkum
