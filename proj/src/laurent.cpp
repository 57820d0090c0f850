#include "fkdet/laurent.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fkdet/errors.hpp"

namespace fkdet {

LaurentPolynomial::LaurentPolynomial(std::size_t rank) : rank_(rank) {
  if (rank == 0) throw std::invalid_argument("Laurent polynomial rank must be >= 1");
}

LaurentPolynomial LaurentPolynomial::constant(std::size_t rank, const Rational& c) {
  LaurentPolynomial p(rank);
  p.add_term(ExponentVector(rank, 0), c);
  return p;
}

LaurentPolynomial LaurentPolynomial::monomial(ExponentVector exponents, const Rational& c) {
  LaurentPolynomial p(exponents.size());
  p.add_term(exponents, c);
  return p;
}

LaurentPolynomial LaurentPolynomial::variable(std::size_t rank, std::size_t axis,
                                              std::int64_t power) {
  if (axis >= rank) throw std::out_of_range("variable axis out of range");
  ExponentVector e(rank, 0);
  e[axis] = power;
  return monomial(std::move(e));
}

LaurentPolynomial LaurentPolynomial::from_coefficients(std::span<const Rational> coeffs,
                                                       std::int64_t low) {
  LaurentPolynomial p(1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    p.add_term({low + static_cast<std::int64_t>(i)}, coeffs[i]);
  }
  return p;
}

bool LaurentPolynomial::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

Rational LaurentPolynomial::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::add_term(const ExponentVector& e, const Rational& c) {
  if (e.size() != rank_) throw std::invalid_argument("exponent vector length != rank");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

ExponentVector LaurentPolynomial::min_exponents() const {
  ExponentVector out(rank_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < rank_; ++i) out[i] = first ? e[i] : std::min(out[i], e[i]);
    first = false;
  }
  return out;
}

ExponentVector LaurentPolynomial::max_exponents() const {
  ExponentVector out(rank_, 0);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < rank_; ++i) out[i] = first ? e[i] : std::max(out[i], e[i]);
    first = false;
  }
  return out;
}

LaurentPolynomial LaurentPolynomial::shifted(const ExponentVector& shift) const {
  if (shift.size() != rank_) throw std::invalid_argument("shift length != rank");
  LaurentPolynomial out(rank_);
  for (const auto& [e, c] : terms_) {
    ExponentVector f = e;
    for (std::size_t i = 0; i < rank_; ++i) f[i] += shift[i];
    out.terms_.emplace_hint(out.terms_.end(), std::move(f), c);
  }
  return out;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational magnitude = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::string monomial;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (e[i] == 0) continue;
      if (!monomial.empty()) monomial += '*';
      monomial += rank_ == 1 ? std::string("z") : "z" + std::to_string(i + 1);
      if (e[i] != 1) monomial += "^" + std::to_string(e[i]);
    }
    if (monomial.empty()) {
      os << magnitude.get_str();
    } else if (magnitude == 1) {
      os << monomial;
    } else {
      os << magnitude.get_str() << '*' << monomial;
    }
  }
  return os.str();
}

void LaurentPolynomial::check_rank(const LaurentPolynomial& other) const {
  if (other.rank_ != rank_) {
    throw DomainError("rank mismatch: " + std::to_string(rank_) + " vs " +
                                std::to_string(other.rank_));
  }
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  check_rank(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  check_rank(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  a.check_rank(b);
  LaurentPolynomial out(a.rank_);
  ExponentVector e(a.rank_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.rank_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

LaurentPolynomial adjoint(const LaurentPolynomial& p) {
  LaurentPolynomial out(p.rank());
  for (const auto& [e, c] : p.terms()) {
    ExponentVector f = e;
    for (auto& x : f) x = -x;
    out.add_term(f, c);
  }
  return out;
}

LaurentPolynomial specialize(const LaurentPolynomial& p, std::span<const std::int64_t> ks) {
  if (ks.size() + 1 != p.rank()) {
    throw std::invalid_argument("specialize: expected " + std::to_string(p.rank() - 1) +
                                " multipliers, got " + std::to_string(ks.size()));
  }
  LaurentPolynomial out(1);
  for (const auto& [e, c] : p.terms()) {
    std::int64_t n = e[0];
    for (std::size_t i = 0; i < ks.size(); ++i) n += ks[i] * e[i + 1];
    out.add_term({n}, c);
  }
  return out;
}

std::int64_t support_bound(const LaurentPolynomial& p, std::size_t axis) {
  if (axis >= p.rank()) throw std::out_of_range("support_bound: axis out of range");
  std::int64_t bound = 0;
  for (const auto& [e, c] : p.terms()) bound = std::max(bound, std::abs(e[axis]));
  return bound;
}

Rational unit_coefficient(const LaurentPolynomial& p) {
  return p.coefficient(ExponentVector(p.rank(), 0));
}

Rational l1_norm(const LaurentPolynomial& p) {
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) sum += abs(c);
  return sum;
}

std::optional<LaurentPolynomial> exact_divide(const LaurentPolynomial& num,
                                              const LaurentPolynomial& den) {
  if (den.is_zero()) throw std::domain_error("exact_divide by zero");
  if (num.rank() != den.rank()) throw std::invalid_argument("exact_divide: rank mismatch");
  const std::size_t d = num.rank();
  LaurentPolynomial quotient(d);
  if (num.is_zero()) return quotient;

  // The quotient's support lies in the box [min(num) - min(den), max(num) - max(den)].
  const ExponentVector lo_n = num.min_exponents(), hi_n = num.max_exponents();
  const ExponentVector lo_d = den.min_exponents(), hi_d = den.max_exponents();
  ExponentVector lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = lo_n[i] - lo_d[i];
    hi[i] = hi_n[i] - hi_d[i];
    if (lo[i] > hi[i]) return std::nullopt;
  }

  const auto& [lead_e, lead_c] = *den.terms().rbegin();
  LaurentPolynomial remainder = num;
  ExponentVector e(d);
  while (!remainder.is_zero()) {
    const auto& [re, rc] = *remainder.terms().rbegin();
    for (std::size_t i = 0; i < d; ++i) {
      e[i] = re[i] - lead_e[i];
      if (e[i] < lo[i] || e[i] > hi[i]) return std::nullopt;
    }
    const Rational c = rc / lead_c;
    quotient.add_term(e, c);
    remainder -= LaurentPolynomial::monomial(e, c) * den;
  }
  return quotient;
}

LaurentPolynomial embed(const LaurentPolynomial& p, std::size_t new_rank,
                        std::span<const std::size_t> axes) {
  if (axes.size() != p.rank()) throw std::invalid_argument("embed: one axis per variable");
  LaurentPolynomial out(new_rank);
  for (const auto& [e, c] : p.terms()) {
    ExponentVector f(new_rank, 0);
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (axes[i] >= new_rank) throw std::out_of_range("embed: axis out of range");
      f[axes[i]] += e[i];
    }
    out.add_term(f, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrices

LaurentMatrix::LaurentMatrix(std::size_t rank, std::size_t rows, std::size_t cols)
    : rank_(rank), rows_(rows), cols_(cols), data_(rows * cols, LaurentPolynomial(rank)) {}

LaurentMatrix LaurentMatrix::identity(std::size_t rank, std::size_t n) {
  LaurentMatrix m(rank, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPolynomial::constant(rank, 1);
  return m;
}

LaurentMatrix LaurentMatrix::from_rows(std::size_t rank,
                                       const std::vector<std::vector<LaurentPolynomial>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t s = r == 0 ? 0 : rows.front().size();
  LaurentMatrix m(rank, r, s);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != s) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < s; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

bool LaurentMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& p) { return p.is_zero(); });
}

void LaurentMatrix::set(std::size_t i, std::size_t j, LaurentPolynomial p) {
  if (p.rank() != rank_) throw std::invalid_argument("matrix entry rank mismatch");
  (*this)(i, j) = std::move(p);
}

LaurentMatrix LaurentMatrix::transpose() const {
  LaurentMatrix t(rank_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::string LaurentMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += (*this)(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}

LaurentMatrix operator+(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.rank_ != b.rank_) {
    throw std::invalid_argument("matrix sum: shape or rank mismatch");
  }
  LaurentMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  if (a.rank_ != b.rank_) throw std::invalid_argument("matrix product: rank mismatch");
  LaurentMatrix out(a.rank_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        out(i, j) += a(i, k) * b(k, j);
      }
  return out;
}

LaurentMatrix adjoint(const LaurentMatrix& a) {
  LaurentMatrix out(a.rank(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = adjoint(a(i, j));
  return out;
}

LaurentMatrix specialize(const LaurentMatrix& a, std::span<const std::int64_t> ks) {
  LaurentMatrix out(1, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = specialize(a(i, j), ks);
  return out;
}

LaurentMatrix stack_rows(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() != b.cols() || a.rank() != b.rank()) {
    throw std::invalid_argument("stack_rows: column or rank mismatch");
  }
  LaurentMatrix out(a.rank(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

namespace {

LaurentPolynomial must_divide(const LaurentPolynomial& num, const LaurentPolynomial& den) {
  auto q = exact_divide(num, den);
  if (!q) throw InternalError("fraction-free elimination: inexact division");
  return std::move(*q);
}

LaurentPolynomial cofactor_expand(const std::vector<const LaurentPolynomial*>& m, std::size_t n,
                                  std::size_t rank) {
  if (n == 0) return LaurentPolynomial::constant(rank, 1);
  if (n == 1) return *m[0];
  LaurentPolynomial det(rank);
  std::vector<const LaurentPolynomial*> minor((n - 1) * (n - 1));
  for (std::size_t col = 0; col < n; ++col) {
    if (m[col]->is_zero()) continue;
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == col) continue;
        minor[(i - 1) * (n - 1) + jj++] = m[i * n + j];
      }
    }
    LaurentPolynomial term = *m[col] * cofactor_expand(minor, n - 1, rank);
    if (col % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // original row indices
  std::vector<std::size_t> pivot_cols;
};

// Fraction-free (Bareiss) row echelon form; entries below the pivots stay
// minors of the original matrix, so every division is exact.
Echelon bareiss_echelon(const LaurentMatrix& a) {
  const std::size_t r = a.rows(), s = a.cols();
  std::vector<std::vector<LaurentPolynomial>> m(r);
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) m[i].push_back(a(i, j));

  Echelon out;
  LaurentPolynomial prev = LaurentPolynomial::constant(a.rank(), 1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < s && row < r; ++col) {
    std::size_t p = row;
    while (p < r && m[p][col].is_zero()) ++p;
    if (p == r) continue;
    std::swap(m[p], m[row]);
    std::swap(order[p], order[row]);
    for (std::size_t i = row + 1; i < r; ++i) {
      for (std::size_t j = col + 1; j < s; ++j) {
        m[i][j] = must_divide(m[row][col] * m[i][j] - m[i][col] * m[row][j], prev);
      }
      m[i][col] = LaurentPolynomial(a.rank());
    }
    prev = m[row][col];
    out.pivot_rows.push_back(order[row]);
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.rank = row;
  return out;
}

LaurentMatrix submatrix(const LaurentMatrix& a, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
  LaurentMatrix out(a.rank(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

void normalize_row(LaurentMatrix& b, std::size_t row) {
  std::vector<Rational> coeffs;
  const LaurentPolynomial* first = nullptr;
  ExponentVector low;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const LaurentPolynomial& p = b(row, j);
    if (p.is_zero()) continue;
    if (!first) {
      first = &p;
      low = p.min_exponents();
    } else {
      const ExponentVector m = p.min_exponents();
      for (std::size_t i = 0; i < low.size(); ++i) low[i] = std::min(low[i], m[i]);
    }
    for (const auto& [e, c] : p.terms()) coeffs.push_back(c);
  }
  if (!first) return;
  Rational scale = 1 / rational_gcd(coeffs);
  if (first->terms().rbegin()->second < 0) scale = -scale;
  for (auto& x : low) x = -x;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    b(row, j) = (b(row, j) * scale).shifted(low);
  }
}

}  // namespace

LaurentPolynomial determinant_cofactor(const LaurentMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<const LaurentPolynomial*> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = &a(i, j);
  return cofactor_expand(m, n, a.rank());
}

LaurentPolynomial determinant_bareiss(const LaurentMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return LaurentPolynomial::constant(a.rank(), 1);
  std::vector<std::vector<LaurentPolynomial>> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i].push_back(a(i, j));

  bool negate = false;
  LaurentPolynomial prev = LaurentPolynomial::constant(a.rank(), 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return LaurentPolynomial(a.rank());
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = must_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      }
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

LaurentPolynomial determinant(const LaurentMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  return a.rows() <= 4 ? determinant_cofactor(a) : determinant_bareiss(a);
}

std::size_t rank_over_fraction_field(const LaurentMatrix& a) { return bareiss_echelon(a).rank; }

KernelBasis kernel_basis(const LaurentMatrix& a, KernelNormalization normalization) {
  // Left kernel of A is the right kernel of A^T: vectors v with A^T v = 0.
  const LaurentMatrix t = a.transpose();
  const std::size_t r = a.rows();
  const Echelon ech = bareiss_echelon(t);

  std::vector<bool> is_pivot(r, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;

  const LaurentMatrix minor = submatrix(t, ech.pivot_rows, ech.pivot_cols);
  const LaurentPolynomial delta = determinant(minor);
  if (delta.is_zero()) throw InternalError("kernel_basis: pivot minor is singular");

  KernelBasis out{r - ech.rank, LaurentMatrix(a.rank(), r - ech.rank, r)};
  std::size_t row = 0;
  for (std::size_t f = 0; f < r; ++f) {
    if (is_pivot[f]) continue;
    out.basis(row, f) = delta;
    // Cramer's rule scaled by delta: the pivot coordinates solve
    // minor * x = -delta * t[R][f].
    for (std::size_t k = 0; k < ech.rank; ++k) {
      LaurentMatrix replaced = minor;
      for (std::size_t i = 0; i < ech.rank; ++i) replaced(i, k) = t(ech.pivot_rows[i], f);
      out.basis(row, ech.pivot_cols[k]) = -determinant(replaced);
    }
    if (normalization == KernelNormalization::canonical) normalize_row(out.basis, row);
    ++row;
  }
  return out;
}

}  // namespace fkdet
