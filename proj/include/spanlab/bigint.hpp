#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "spanlab/errors.hpp"

namespace spanlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(std::int64_t n) {
  if (n < 0) throw DomainError("factorial of negative number");
  BigInt r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// C(n, k); zero outside 0 <= k <= n.
inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// [x]_l = x (x-1) ... (x-l+1)
inline BigInt falling_factorial(std::int64_t x, std::int64_t l) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < l; ++i) r *= x - i;
  return r;
}

// Natural log of a positive big integer, accurate to double precision.
inline double log_big(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 1000) return static_cast<double>(std::log(x.convert_to<long double>()));
  const std::size_t shift = bits - 64;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_rational(const Rational& r) {
  if (r <= 0) return -std::numeric_limits<double>::infinity();
  return log_big(boost::multiprecision::numerator(r)) -
         log_big(boost::multiprecision::denominator(r));
}

inline double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  return r < 0 ? -std::exp(log_rational(-r)) : std::exp(log_rational(r));
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

// "p/q", or just "p" when the denominator is one.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

inline BigInt to_bigint(unsigned __int128 v) {
  BigInt r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

}  // namespace spanlab
