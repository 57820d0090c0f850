#include "fkdet/fk_value.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fkdet {
namespace {

Integer integer_root(const Integer& x, unsigned long k) {
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

Integer integer_pow(const Integer& x, unsigned long k) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

}  // namespace

ExactRadical::ExactRadical(const Rational& base, const Rational& exponent) {
  if (base <= 0) throw std::domain_error("radical base must be positive");
  Rational b = base;
  Rational e = exponent;
  b.canonicalize();
  e.canonicalize();
  if (b < 1) {
    b = 1 / b;
    e = -e;
  }
  if (b == 1 || e == 0) {
    base_ = 1;
    exponent_ = 0;
    return;
  }
  // Largest k with both numerator and denominator perfect k-th powers.
  const Integer num(b.get_num()), den(b.get_den());
  unsigned long k = perfect_power_exponent(num);
  // x is a perfect j-th power exactly for the divisors j of its maximal exponent.
  if (den != 1) k = std::gcd(k, perfect_power_exponent(den));
  if (k > 1) {
    b = Rational(integer_root(num, k), integer_root(den, k));
    e *= Rational(static_cast<long>(k));
  }
  b.canonicalize();
  e.canonicalize();
  base_ = b;
  exponent_ = e;
}

double ExactRadical::log_value() const {
  if (base_ == 1) return 0;
  return exponent_.get_d() * log_abs(base_);
}

double ExactRadical::value() const { return std::exp(log_value()); }

std::string ExactRadical::to_string() const {
  return base_.get_str() + "^(" + exponent_.get_str() + ")";
}

ExactRadical operator*(const ExactRadical& a, const ExactRadical& b) {
  if (a.base_ == 1) return b;
  if (b.base_ == 1) return a;
  // a^(p/q) b^(r/s) = (a^(p L/q) b^(r L/s))^(1/L), L = lcm(q, s).
  const Integer q(a.exponent_.get_den()), s(b.exponent_.get_den());
  const Integer l = lcm(q, s);
  const Integer ea = Integer(a.exponent_.get_num()) * (l / q);
  const Integer eb = Integer(b.exponent_.get_num()) * (l / s);
  auto power = [](const Rational& base, const Integer& e) {
    if (!e.fits_slong_p()) throw std::overflow_error("radical exponent too large");
    const long n = e.get_si();
    const unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
    Rational r(integer_pow(Integer(base.get_num()), m), integer_pow(Integer(base.get_den()), m));
    return n < 0 ? Rational(1 / r) : r;
  };
  return ExactRadical(power(a.base_, ea) * power(b.base_, eb), Rational(Integer(1), l));
}

ExactRadical pow(const ExactRadical& a, const Rational& e) {
  return ExactRadical(a.base_, a.exponent_ * e);
}

FKValue FKValue::from_exact(const ExactRadical& r, std::string method) {
  FKValue v;
  v.exact = r;
  v.log_value = r.log_value();
  v.value = std::exp(v.log_value);
  v.method = std::move(method);
  return v;
}

}  // namespace fkdet
