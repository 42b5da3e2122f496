#include "divkummer/int.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace divkum {

std::uint64_t enum_budget() {
  static const std::uint64_t budget = [] {
    if (const char* env = std::getenv("DIVKUMMER_MAX_ENUM")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(1000000);
  }();
  return budget;
}

Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int old_r = a, r = b;
  Int old_x = 1, xx = 0;
  Int old_y = 0, yy = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_x - q * xx;
    old_x = xx;
    xx = tmp;
    tmp = old_y - q * yy;
    old_y = yy;
    yy = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_x = -old_x;
    old_y = -old_y;
  }
  x = old_x;
  y = old_y;
  return old_r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(const Int& a, const Int& b) {
  Int r = a - floor_div(a, b) * b;
  return r;
}

int valuation(Int a, const Int& p) {
  if (a == 0) throw error("valuation of zero");
  a = abs_int(a);
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<Int, int>> factorize(Int n) {
  n = abs_int(n);
  if (n == 0) throw error("factorize(0)");
  std::vector<std::pair<Int, int>> out;
  for (Int d = 2; d * d <= n; d = (d == 2 ? Int(3) : d + 2)) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<Int> divisors_sorted(const Int& n) {
  auto fac = factorize(n);
  std::vector<Int> out{1};
  for (const auto& [p, e] : fac) {
    std::size_t cur = out.size();
    Int pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (std::size_t k = 0; k < cur; ++k) out.push_back(out[k] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const Int& a) { return a.str(); }

std::string to_string(const Rat& a) {
  Int num = boost::multiprecision::numerator(a);
  Int den = boost::multiprecision::denominator(a);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Int parse_int(const std::string& s) {
  if (s.empty()) throw input_error("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw input_error("bad integer literal: " + s);
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw input_error("bad integer literal: " + s);
  return Int(s);
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw input_error("zero denominator: " + s);
  return Rat(num, den);
}

}  // namespace divkum
