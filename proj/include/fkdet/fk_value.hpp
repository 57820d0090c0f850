#pragma once

#include <optional>
#include <string>

#include "fkdet/rational.hpp"

namespace fkdet {

/// base^exponent with a positive rational base, kept in a canonical form:
/// base > 1 and not a perfect power, or base = 1 with exponent 0. Two
/// radicals denote the same real number iff their canonical forms agree.
class ExactRadical {
 public:
  ExactRadical() = default;
  ExactRadical(const Rational& base, const Rational& exponent);

  const Rational& base() const noexcept { return base_; }
  const Rational& exponent() const noexcept { return exponent_; }
  double log_value() const;
  double value() const;
  std::string to_string() const;

  friend ExactRadical operator*(const ExactRadical& a, const ExactRadical& b);
  friend ExactRadical pow(const ExactRadical& a, const Rational& e);
  friend bool operator==(const ExactRadical&, const ExactRadical&) = default;

 private:
  Rational base_ = 1;
  Rational exponent_ = 0;
};

/// A Fuglede-Kadison determinant value.
struct FKValue {
  double value = 1;
  double log_value = 0;
  std::optional<ExactRadical> exact;
  std::string method;
  double error_estimate = 0;

  static FKValue from_exact(const ExactRadical& r, std::string method);
};

}  // namespace fkdet
