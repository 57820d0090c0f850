#pragma once

// Fuglede-Kadison determinants and von Neumann dimensions over group rings
// of finite groups, computed exactly from the regular representation.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fkdet/fk_value.hpp"
#include "fkdet/rational.hpp"

namespace fkdet {

/// A finite group given by its multiplication table. Elements are the
/// indices 0..n-1; the table is row-major, table[a * n + b] = a * b.
class FiniteGroup {
 public:
  FiniteGroup(std::size_t order, std::size_t identity, std::vector<std::size_t> table);

  std::size_t order() const noexcept { return order_; }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * order_ + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::size_t>& table() const noexcept { return table_; }

  /// Cyclic factor orders when the group was built as Z/n_1 x ... x Z/n_k
  /// (element index a_1 + n_1 (a_2 + n_2 (...))); empty otherwise.
  const std::vector<std::size_t>& abelian_moduli() const noexcept { return moduli_; }
  std::string description() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.order_ == b.order_ && a.identity_ == b.identity_ && a.table_ == b.table_;
  }

 private:
  friend std::shared_ptr<const FiniteGroup> make_abelian(std::span<const std::size_t> moduli);
  struct Trusted {};
  FiniteGroup(Trusted, std::size_t order, std::size_t identity, std::vector<std::size_t> table,
              std::vector<std::size_t> moduli);
  void compute_inverses();

  std::size_t order_;
  std::size_t identity_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> moduli_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Z/n with generator t at index 1 and t^k at index k.
GroupPtr make_cyclic(std::size_t n);
/// Z/n_1 x ... x Z/n_k.
GroupPtr make_abelian(std::span<const std::size_t> moduli);

/// An element sum_g c_g g of Q[G].
class GroupRingElement {
 public:
  explicit GroupRingElement(GroupPtr group);
  GroupRingElement(GroupPtr group, std::vector<Rational> coeffs);

  static GroupRingElement basis(GroupPtr group, std::size_t g, const Rational& c = 1);

  const GroupPtr& group() const noexcept { return group_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& operator[](std::size_t g) const { return coeffs_[g]; }
  Rational& operator[](std::size_t g) { return coeffs_[g]; }
  bool is_zero() const;
  bool has_integer_coefficients() const;
  std::string to_string() const;

  GroupRingElement& operator+=(const GroupRingElement& other);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);
  friend GroupRingElement operator*(GroupRingElement a, const Rational& c);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return *a.group_ == *b.group_ && a.coeffs_ == b.coeffs_;
  }

 private:
  GroupPtr group_;
  std::vector<Rational> coeffs_;
};

/// sum conj(c_g) g^{-1}.
GroupRingElement adjoint(const GroupRingElement& x);
/// N_G = sum_{g in G} g.
GroupRingElement norm_element(const GroupPtr& group);
/// Coefficient of the identity element.
Rational trace_element(const GroupRingElement& x);

/// Parses elements of Q[G]: terms joined by + and -, each an optional rational
/// coefficient and '*'-joined factors `e`, `gK` (element index K), `t^E`
/// (generator of a cyclic group) or `tK^E` (generator of the K-th cyclic factor).
GroupRingElement parse_group_element(std::string_view text, const GroupPtr& group);

class GroupRingMatrix {
 public:
  GroupRingMatrix(GroupPtr group, std::size_t rows, std::size_t cols);
  static GroupRingMatrix from_rows(GroupPtr group,
                                   const std::vector<std::vector<GroupRingElement>>& rows);

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool has_integer_coefficients() const;

  GroupRingElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const GroupRingElement& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  void set(std::size_t i, std::size_t j, GroupRingElement x);
  std::string to_string() const;

  friend GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b);
  friend GroupRingMatrix operator+(const GroupRingMatrix& a, const GroupRingMatrix& b);
  friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b);

 private:
  GroupPtr group_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<GroupRingElement> data_;
};

GroupRingMatrix adjoint(const GroupRingMatrix& a);
/// [[a, c], [0, b]] for square a, b.
GroupRingMatrix block_upper_triangular(const GroupRingMatrix& a, const GroupRingMatrix& c,
                                       const GroupRingMatrix& b);

/// Dense row-major matrix over an exact scalar type.
template <class T>
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}
  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

using RationalMatrix = DenseMatrix<Rational>;

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);

/// Matrix of x -> xA on (Q[G])^r in the basis (slot i, element g), with
/// rows and columns ordered slot-major: entry [(i, g), (j, g h)] is the
/// coefficient of h in A(i, j). Satisfies rep(A) rep(B) = rep(AB).
RationalMatrix regular_rep(const GroupRingMatrix& a);

/// det(tI - M) by Berkowitz's division-free algorithm; coefficients
/// ascending (index k holds the coefficient of t^k).
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);
std::vector<Integer> characteristic_polynomial(const DenseMatrix<Integer>& m);

Rational determinant(const RationalMatrix& m);
std::size_t matrix_rank(const RationalMatrix& m);

/// det_{N(G)}(r_A) = (product of the nonzero eigenvalues of M M^*)^{1/(2|G|)},
/// M = regular_rep(A); exactly 1 for the zero operator.
FKValue fk_det_finite(const GroupRingMatrix& a);

/// Closed form for 2x2 complex matrices over the trivial group: |det A| if
/// invertible, sqrt(tr(A A^*)) if rank one, 1 if zero.
FKValue fk_det_2x2_trivial(const RationalMatrix& a);

/// (r |G| - rank regular_rep(A)) / |G|.
Rational vn_dim_kernel_finite(const GroupRingMatrix& a);

/// Push-forward i_* A along an injective homomorphism H -> G given by
/// embedding[h] = i(h).
GroupRingMatrix induce(const GroupRingMatrix& a, std::span<const std::size_t> embedding,
                       const GroupPtr& target);

/// The restriction i^* r_A as a (r m) x (s m) matrix over Q[H], m = [G : H],
/// using right cosets H g_1, ..., H g_m; row (i, k) sits at index i m + k.
GroupRingMatrix restrict_to_subgroup(const GroupRingMatrix& a, const GroupPtr& subgroup,
                                     std::span<const std::size_t> embedding);

/// Throws DomainError unless `embedding` is an injective homomorphism H -> G.
void check_embedding(const FiniteGroup& h, const FiniteGroup& g,
                     std::span<const std::size_t> embedding);

}  // namespace fkdet
