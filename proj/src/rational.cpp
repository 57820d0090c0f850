#include "fkdet/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace fkdet {

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(std::string_view text) {
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a rational number: " + std::string(text));
  }
  r.canonicalize();
  return r;
}

double log_abs(const Integer& x) {
  if (x == 0) throw std::domain_error("log_abs of zero");
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mantissa)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const Rational& x) {
  return log_abs(Integer(x.get_num())) - log_abs(Integer(x.get_den()));
}

unsigned long perfect_power_exponent(const Integer& x) {
  if (x < 0) throw std::domain_error("perfect_power_exponent of a negative number");
  if (x <= 1) return 1;
  const unsigned long bits = mpz_sizeinbase(x.get_mpz_t(), 2);
  Integer root;
  for (unsigned long k = bits; k >= 2; --k) {
    if (mpz_root(root.get_mpz_t(), x.get_mpz_t(), k) != 0) return k;
  }
  return 1;
}

}  // namespace fkdet
