#pragma once

// Exact Laurent polynomials in d variables over Q, i.e. elements of the
// rational group ring Q[Z^d], and matrices over them.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fkdet/rational.hpp"

namespace fkdet {

/// Exponents (n_1, ..., n_d) of a monomial z_1^{n_1} ... z_d^{n_d}.
using ExponentVector = std::vector<std::int64_t>;

class LaurentPolynomial {
 public:
  /// Terms ordered lexicographically by exponent vector.
  using Terms = std::map<ExponentVector, Rational>;

  /// The zero polynomial of the given rank.
  explicit LaurentPolynomial(std::size_t rank = 1);

  static LaurentPolynomial constant(std::size_t rank, const Rational& c);
  static LaurentPolynomial monomial(ExponentVector exponents, const Rational& c = 1);
  /// z_{axis+1}^power in rank `rank`; axis is zero-based.
  static LaurentPolynomial variable(std::size_t rank, std::size_t axis,
                                    std::int64_t power = 1);
  /// Dense one-variable polynomial sum_i coeffs[i] z^{i + low}.
  static LaurentPolynomial from_coefficients(std::span<const Rational> coeffs,
                                             std::int64_t low = 0);

  std::size_t rank() const noexcept { return rank_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool has_integer_coefficients() const;

  Rational coefficient(const ExponentVector& e) const;
  /// Adds c z^e, merging with an existing term and dropping zeros.
  void add_term(const ExponentVector& e, const Rational& c);

  /// Componentwise minimum / maximum exponent over the support. Zero for p = 0.
  ExponentVector min_exponents() const;
  ExponentVector max_exponents() const;

  /// Multiplication by the unit monomial z^shift.
  LaurentPolynomial shifted(const ExponentVector& shift) const;

  /// Canonical printing, terms in lexicographic exponent order.
  std::string to_string() const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  LaurentPolynomial& operator*=(const Rational& c);

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a += b;
  }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
    return a -= b;
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) { return a *= c; }
  friend LaurentPolynomial operator-(LaurentPolynomial a) { return a *= Rational(-1); }
  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

 private:
  void check_rank(const LaurentPolynomial& other) const;

  std::size_t rank_;
  Terms terms_;
};

/// The involution sum a_g g -> sum conj(a_g) g^{-1}; over Q it negates exponents.
LaurentPolynomial adjoint(const LaurentPolynomial& p);

/// Ring homomorphism Q[Z^d] -> Q[Z] induced by
/// (a_1, ..., a_d) -> a_1 + k_2 a_2 + ... + k_d a_d; ks = (k_2, ..., k_d).
LaurentPolynomial specialize(const LaurentPolynomial& p, std::span<const std::int64_t> ks);

/// Max |n_axis| over the support; 0 for p = 0. axis is zero-based.
std::int64_t support_bound(const LaurentPolynomial& p, std::size_t axis);

/// Coefficient of the unit, i.e. of the zero exponent vector.
Rational unit_coefficient(const LaurentPolynomial& p);

/// Sum of |coefficients|.
Rational l1_norm(const LaurentPolynomial& p);

/// Quotient num / den when den divides num in Q[Z^d], std::nullopt otherwise.
std::optional<LaurentPolynomial> exact_divide(const LaurentPolynomial& num,
                                              const LaurentPolynomial& den);

/// Embeds a polynomial into a higher rank: variable i goes to axis axes[i].
LaurentPolynomial embed(const LaurentPolynomial& p, std::size_t new_rank,
                        std::span<const std::size_t> axes);

/// Parses the polynomial grammar: terms joined by + and -, each an optional
/// rational coefficient, optional '*', and factors zK^E (K in 1..d, E a signed
/// integer). In rank 1 the bare variable `z` is accepted. When rank is 0 the
/// rank is inferred (largest K seen, 1 for constants and bare z).
LaurentPolynomial parse_polynomial(std::string_view text, std::size_t rank = 0);

/// r x s matrix of Laurent polynomials of a common rank; the A in x -> xA.
class LaurentMatrix {
 public:
  LaurentMatrix(std::size_t rank, std::size_t rows, std::size_t cols);

  static LaurentMatrix identity(std::size_t rank, std::size_t n);
  /// Builds from row-major entries; every entry must have rank `rank`.
  static LaurentMatrix from_rows(std::size_t rank,
                                 const std::vector<std::vector<LaurentPolynomial>>& rows);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_zero() const;

  LaurentPolynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LaurentPolynomial& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, LaurentPolynomial p);

  LaurentMatrix transpose() const;
  std::string to_string() const;

  friend LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

 private:
  std::size_t rank_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<LaurentPolynomial> data_;
};

/// (s, r) matrix whose (i, j) entry is the adjoint of entry (j, i).
LaurentMatrix adjoint(const LaurentMatrix& a);
LaurentMatrix specialize(const LaurentMatrix& a, std::span<const std::int64_t> ks);
/// Block matrix [[a], [b]] stacking rows.
LaurentMatrix stack_rows(const LaurentMatrix& a, const LaurentMatrix& b);

/// Determinant over the commutative ring Q[Z^d]. Laplace expansion for n <= 4,
/// fraction-free Bareiss elimination otherwise.
LaurentPolynomial determinant(const LaurentMatrix& a);
LaurentPolynomial determinant_cofactor(const LaurentMatrix& a);
LaurentPolynomial determinant_bareiss(const LaurentMatrix& a);

/// Rank over the fraction field Q(z_1, ..., z_d).
std::size_t rank_over_fraction_field(const LaurentMatrix& a);

enum class KernelNormalization {
  /// Rows divided by their rational content, sign fixed, minimal exponents shifted to 0.
  canonical,
  /// Raw Cramer-rule rows (minors of a maximal nonsingular submatrix).
  raw,
};

struct KernelBasis {
  std::size_t dimension;  // q
  LaurentMatrix basis;    // q x r, rows b with b A = 0
};

/// Left kernel of A over the fraction field, with polynomial entries.
KernelBasis kernel_basis(const LaurentMatrix& a,
                         KernelNormalization normalization = KernelNormalization::canonical);

}  // namespace fkdet
