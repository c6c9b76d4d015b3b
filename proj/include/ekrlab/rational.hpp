#pragma once

// Exact arithmetic helpers: GMP-backed rationals, binomial coefficients with
// the total convention C(a, b) = 0 outside 0 <= b <= a, and `a/b` text I/O.

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ekrlab {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
using Rational = mpq_class;
using BigInt = mpz_class;

inline BigInt to_big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

/// num/den in lowest terms (mpq_class's two-argument constructor does not
/// reduce). den != 0.
inline Rational ratio(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "a/b" or "a" (optional leading '-'); throws std::invalid_argument on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Prints in lowest terms as "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Decimal approximation for human-readable reports only.
double to_double(const Rational& q);

/// C(a, b), zero when b < 0, b > a or a < 0.
BigInt binom(long a, long b);

/// Machine-word binomial for a <= 62.
std::uint64_t binom_u64(int a, int b);

/// q^e for e >= 0.
Rational pow(const Rational& q, unsigned long e);

/// True iff 0 <= q <= 1.
bool in_unit_interval(const Rational& q);

}  // namespace ekrlab
