#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flagcert {

/// Exact fraction backed by GMP. mpq_class keeps values canonical (reduced,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", "p", or a plain decimal such as "34.7858" or "-1e-3".
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Fixed-point rendering with `digits` decimals, rounded half away from zero.
std::string to_decimal(const Rational& value, int digits);

/// Nearest multiple of 1/denominator (ties away from zero).
Rational round_to_denominator(double value, const BigInt& denominator);
Rational round_to_denominator(const Rational& value, const BigInt& denominator);

/// Exact conversion of a finite double.
Rational from_double(double value);

/// n/d in canonical form. mpq_class(n, d) alone does not reduce.
inline Rational ratio(const BigInt& n, const BigInt& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

BigInt factorial(int n);
BigInt binomial(int n, int k);
/// n (n-1) ... (n-k+1)
BigInt falling_factorial(int n, int k);

}  // namespace flagcert
