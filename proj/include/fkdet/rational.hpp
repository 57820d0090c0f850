#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fkdet {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

/// Parses "a" or "a/b" with optional sign.
Rational parse_rational(std::string_view text);

/// ln|x| without overflow for arbitrarily large integers. x must be nonzero.
double log_abs(const Integer& x);
double log_abs(const Rational& x);

/// Greatest k >= 1 with x = y^k for some integer y >= 0 (x >= 0).
unsigned long perfect_power_exponent(const Integer& x);

/// gcd of numerators over lcm of denominators, always positive; 0 for all-zero input.
template <class Range>
Rational rational_gcd(const Range& values) {
  Integer num = 0;
  Integer den = 1;
  for (const Rational& v : values) {
    if (v == 0) continue;
    num = gcd(num, Integer(v.get_num()));
    den = lcm(den, Integer(v.get_den()));
  }
  Rational g(num, den);
  g.canonicalize();
  return g;
}

}  // namespace fkdet
