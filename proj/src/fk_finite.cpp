#include "fkdet/fk_finite.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "fkdet/errors.hpp"

namespace fkdet {

// ---------------------------------------------------------------- groups

FiniteGroup::FiniteGroup(std::size_t order, std::size_t identity, std::vector<std::size_t> table)
    : order_(order), identity_(identity), table_(std::move(table)) {
  const std::size_t n = order_;
  if (n == 0) throw DomainError("group order must be positive");
  if (table_.size() != n * n) throw DomainError("group table must be order x order");
  if (identity_ >= n) throw DomainError("identity index out of range");
  for (std::size_t x : table_) {
    if (x >= n) throw DomainError("group table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (multiply(identity_, a) != a || multiply(a, identity_) != a) {
      throw DomainError("identity is not two-sided");
    }
  }
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[multiply(a, b)]++) throw DomainError("group table row is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[multiply(b, a)]++) throw DomainError("group table column is not a permutation");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = multiply(a, b);
      for (std::size_t c = 0; c < n; ++c) {
        if (multiply(ab, c) != multiply(a, multiply(b, c))) {
          throw DomainError("group table is not associative");
        }
      }
    }
  }
  compute_inverses();
}

FiniteGroup::FiniteGroup(Trusted, std::size_t order, std::size_t identity,
                         std::vector<std::size_t> table, std::vector<std::size_t> moduli)
    : order_(order), identity_(identity), table_(std::move(table)), moduli_(std::move(moduli)) {
  compute_inverses();
}

void FiniteGroup::compute_inverses() {
  inverse_.assign(order_, 0);
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = 0; b < order_; ++b) {
      if (multiply(a, b) == identity_) {
        inverse_[a] = b;
        break;
      }
    }
  }
}

std::string FiniteGroup::description() const {
  if (moduli_.empty()) return "group of order " + std::to_string(order_);
  std::string out;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + std::to_string(moduli_[i]);
  }
  return out;
}

GroupPtr make_cyclic(std::size_t n) {
  if (n == 0) throw DomainError("cyclic group order must be positive");
  const std::size_t moduli[] = {n};
  return make_abelian(moduli);
}

GroupPtr make_abelian(std::span<const std::size_t> moduli) {
  if (moduli.empty()) throw DomainError("abelian group needs at least one factor");
  std::size_t n = 1;
  for (std::size_t m : moduli) {
    if (m == 0) throw DomainError("cyclic factor order must be positive");
    n *= m;
  }
  const std::size_t d = moduli.size();
  // Mixed-radix digits of every element, then digitwise addition.
  std::vector<std::size_t> digits(n * d);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t x = a;
    for (std::size_t k = 0; k < d; ++k) {
      digits[a * d + k] = x % moduli[k];
      x /= moduli[k];
    }
  }
  std::vector<std::size_t> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t index = 0;
      for (std::size_t k = d; k-- > 0;) {
        index = index * moduli[k] + (digits[a * d + k] + digits[b * d + k]) % moduli[k];
      }
      table[a * n + b] = index;
    }
  }
  return std::shared_ptr<const FiniteGroup>(new FiniteGroup(
      FiniteGroup::Trusted{}, n, 0, std::move(table),
      std::vector<std::size_t>(moduli.begin(), moduli.end())));
}

// ---------------------------------------------------------------- elements

namespace {

void require_same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a != b && !(*a == *b)) throw DomainError("group ring elements over different groups");
}

std::string element_name(const FiniteGroup& g, std::size_t index) {
  if (index == g.identity()) return "e";
  const auto& moduli = g.abelian_moduli();
  if (moduli.empty()) return "g" + std::to_string(index);
  std::string out;
  std::size_t x = index;
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    const std::size_t a = x % moduli[k];
    x /= moduli[k];
    if (a == 0) continue;
    if (!out.empty()) out += "*";
    out += moduli.size() == 1 ? "t" : "t" + std::to_string(k + 1);
    if (a != 1) out += "^" + std::to_string(a);
  }
  return out;
}

}  // namespace

GroupRingElement::GroupRingElement(GroupPtr group)
    : group_(std::move(group)), coeffs_(group_->order(), Rational(0)) {}

GroupRingElement::GroupRingElement(GroupPtr group, std::vector<Rational> coeffs)
    : group_(std::move(group)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != group_->order()) {
    throw DomainError("coefficient count does not match group order");
  }
  for (Rational& c : coeffs_) c.canonicalize();
}

GroupRingElement GroupRingElement::basis(GroupPtr group, std::size_t g, const Rational& c) {
  GroupRingElement x(std::move(group));
  if (g >= x.group_->order()) throw DomainError("group element index out of range");
  x.coeffs_[g] = c;
  return x;
}

bool GroupRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool GroupRingElement::has_integer_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& c) { return c.get_den() == 1; });
}

std::string GroupRingElement::to_string() const {
  std::string out;
  for (std::size_t g = 0; g < coeffs_.size(); ++g) {
    const Rational& c = coeffs_[g];
    if (c == 0) continue;
    const bool unit = g == group_->identity();
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (unit) {
      out += fkdet::to_string(mag);
    } else {
      if (mag != 1) out += fkdet::to_string(mag) + "*";
      out += element_name(*group_, g);
    }
  }
  return out.empty() ? "0" : out;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& other) {
  require_same_group(group_, other.group_);
  for (std::size_t g = 0; g < coeffs_.size(); ++g) coeffs_[g] += other.coeffs_[g];
  return *this;
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
  require_same_group(a.group_, b.group_);
  GroupRingElement out = a;
  for (std::size_t g = 0; g < out.coeffs_.size(); ++g) out.coeffs_[g] -= b.coeffs_[g];
  return out;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  require_same_group(a.group_, b.group_);
  const FiniteGroup& grp = *a.group_;
  GroupRingElement out(a.group_);
  for (std::size_t g = 0; g < grp.order(); ++g) {
    if (a.coeffs_[g] == 0) continue;
    for (std::size_t h = 0; h < grp.order(); ++h) {
      if (b.coeffs_[h] == 0) continue;
      out.coeffs_[grp.multiply(g, h)] += a.coeffs_[g] * b.coeffs_[h];
    }
  }
  return out;
}

GroupRingElement operator*(GroupRingElement a, const Rational& c) {
  for (Rational& x : a.coeffs_) x *= c;
  return a;
}

GroupRingElement adjoint(const GroupRingElement& x) {
  const FiniteGroup& grp = *x.group();
  GroupRingElement out(x.group());
  for (std::size_t g = 0; g < grp.order(); ++g) out[grp.inverse(g)] = x[g];
  return out;
}

GroupRingElement norm_element(const GroupPtr& group) {
  return GroupRingElement(group, std::vector<Rational>(group->order(), Rational(1)));
}

Rational trace_element(const GroupRingElement& x) { return x[x.group()->identity()]; }

// ---------------------------------------------------------------- parser

namespace {

class ElementParser {
 public:
  ElementParser(std::string_view text, const GroupPtr& group) : text_(text), group_(group) {}

  GroupRingElement parse() {
    GroupRingElement out(group_);
    skip_space();
    if (at_end()) fail("empty element");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    term(out, negative);
    while (true) {
      skip_space();
      if (at_end()) break;
      const char op = peek();
      if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
      ++pos_;
      term(out, op == '-');
    }
    return out;
  }

 private:
  void term(GroupRingElement& out, bool negative) {
    skip_space();
    Rational c(negative ? -1 : 1);
    std::size_t element = group_->identity();
    bool have_any = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      Rational v{Integer(digits())};
      skip_space();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_space();
        const Integer den(digits());
        if (den == 0) fail("zero denominator");
        v /= Rational(den);
      }
      c *= v;
      have_any = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        expect_factor();
      }
    }
    while (true) {
      skip_space();
      if (at_end() || !is_factor_start(peek())) break;
      element = group_->multiply(element, factor());
      have_any = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        expect_factor();
      }
    }
    if (!have_any) fail("expected a term");
    out[element] += c;
  }

  static bool is_factor_start(char ch) { return ch == 'e' || ch == 'g' || ch == 't'; }

  void expect_factor() {
    skip_space();
    if (at_end() || !is_factor_start(peek())) fail("expected group element after '*'");
  }

  std::size_t factor() {
    const std::size_t start = pos_;
    const char kind = text_[pos_++];
    if (kind == 'e') return group_->identity();
    if (kind == 'g') {
      const std::string d = digits();
      const unsigned long index = std::stoul(d);
      if (index >= group_->order()) fail("element index out of range", start);
      return power(index, exponent());
    }
    // 't' or 'tK'.
    const auto& moduli = group_->abelian_moduli();
    std::size_t axis = 0;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const unsigned long k = std::stoul(digits());
      if (k == 0 || k > moduli.size()) fail("generator index out of range", start);
      axis = k - 1;
    } else if (moduli.size() != 1) {
      fail("bare generator t needs a cyclic group", start);
    }
    const long long e = exponent();
    const long long m = static_cast<long long>(moduli[axis]);
    const long long r = ((e % m) + m) % m;
    std::size_t stride = 1;
    for (std::size_t k = 0; k < axis; ++k) stride *= moduli[k];
    return static_cast<std::size_t>(r) * stride;
  }

  std::size_t power(std::size_t g, long long e) const {
    if (e < 0) {
      g = group_->inverse(g);
      e = -e;
    }
    std::size_t out = group_->identity();
    for (long long i = 0; i < e % static_cast<long long>(group_->order()); ++i) {
      out = group_->multiply(out, g);
    }
    return out;
  }

  long long exponent() {
    skip_space();
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    skip_space();
    const bool paren = !at_end() && peek() == '(';
    if (paren) ++pos_;
    skip_space();
    bool neg = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      ++pos_;
    }
    const std::size_t start = pos_;
    long long e = 0;
    try {
      e = std::stoll(digits());
    } catch (const std::out_of_range&) {
      fail("exponent out of range", start);
    }
    if (paren) {
      skip_space();
      if (at_end() || peek() != ')') fail("expected ')'");
      ++pos_;
    }
    return neg ? -e : e;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError(what, at);
  }

  std::string_view text_;
  const GroupPtr& group_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupRingElement parse_group_element(std::string_view text, const GroupPtr& group) {
  return ElementParser(text, group).parse();
}

// ---------------------------------------------------------------- matrices

GroupRingMatrix::GroupRingMatrix(GroupPtr group, std::size_t rows, std::size_t cols)
    : group_(group), rows_(rows), cols_(cols), data_(rows * cols, GroupRingElement(group)) {
  if (rows == 0 || cols == 0) throw DomainError("matrix dimensions must be positive");
}

GroupRingMatrix GroupRingMatrix::from_rows(
    GroupPtr group, const std::vector<std::vector<GroupRingElement>>& rows) {
  if (rows.empty() || rows.front().empty()) throw DomainError("empty matrix");
  GroupRingMatrix m(std::move(group), rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

bool GroupRingMatrix::has_integer_coefficients() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const GroupRingElement& x) { return x.has_integer_coefficients(); });
}

void GroupRingMatrix::set(std::size_t i, std::size_t j, GroupRingElement x) {
  require_same_group(group_, x.group());
  data_.at(i * cols_ + j) = std::move(x);
}

std::string GroupRingMatrix::to_string() const {
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

GroupRingMatrix operator*(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  require_same_group(a.group_, b.group_);
  if (a.cols_ != b.rows_) throw DomainError("matrix dimension mismatch");
  GroupRingMatrix out(a.group_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

GroupRingMatrix operator+(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  require_same_group(a.group_, b.group_);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch");
  GroupRingMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
  return *a.group_ == *b.group_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.data_ == b.data_;
}

GroupRingMatrix adjoint(const GroupRingMatrix& a) {
  GroupRingMatrix out(a.group(), a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = adjoint(a(i, j));
  }
  return out;
}

GroupRingMatrix block_upper_triangular(const GroupRingMatrix& a, const GroupRingMatrix& c,
                                       const GroupRingMatrix& b) {
  if (!a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.cols()) {
    throw DomainError("block shapes do not fit");
  }
  require_same_group(a.group(), b.group());
  require_same_group(a.group(), c.group());
  const std::size_t n = a.rows(), m = b.rows();
  GroupRingMatrix out(a.group(), n + m, n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < m; ++j) out(i, n + j) = c(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(n + i, n + j) = b(i, j);
  }
  return out;
}

// ---------------------------------------------------------------- dense linear algebra

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix dimension mismatch");
  RationalMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix out(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) out(j, i) = a(i, j);
  }
  return out;
}

RationalMatrix regular_rep(const GroupRingMatrix& a) {
  const FiniteGroup& g = *a.group();
  const std::size_t n = g.order();
  RationalMatrix m(a.rows() * n, a.cols() * n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const GroupRingElement& x = a(i, j);
      for (std::size_t h = 0; h < n; ++h) {
        if (x[h] == 0) continue;
        for (std::size_t x0 = 0; x0 < n; ++x0) m(i * n + x0, j * n + g.multiply(x0, h)) = x[h];
      }
    }
  }
  return m;
}

namespace {

template <class T>
std::vector<T> berkowitz(const DenseMatrix<T>& a) {
  if (a.rows != a.cols) throw std::invalid_argument("characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows;
  // Descending coefficients of the characteristic polynomial of the leading r x r block.
  std::vector<T> p{T(1)};
  std::vector<T> row, next;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<T> t(r + 2, T(0));
    t[0] = 1;
    t[1] = -a(r, r);
    row.assign(r, T(0));
    for (std::size_t j = 0; j < r; ++j) row[j] = a(r, j);
    for (std::size_t k = 0; k < r; ++k) {
      T dot = 0;
      for (std::size_t j = 0; j < r; ++j) dot += row[j] * a(j, r);
      t[k + 2] = -dot;
      if (k + 1 == r) break;
      next.assign(r, T(0));
      for (std::size_t j = 0; j < r; ++j) {
        if (row[j] == 0) continue;
        for (std::size_t l = 0; l < r; ++l) next[l] += row[j] * a(j, l);
      }
      row.swap(next);
    }
    std::vector<T> q(r + 2, T(0));
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) q[i] += t[i - j] * p[j];
    }
    p.swap(q);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

// Fraction-free Bareiss determinant with row pivoting; exact over Z.
Integer bareiss_determinant(DenseMatrix<Integer> m) {
  const std::size_t n = m.rows;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(v);
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool is_integral(const RationalMatrix& m) {
  return std::all_of(m.data.begin(), m.data.end(),
                     [](const Rational& x) { return x.get_den() == 1; });
}

DenseMatrix<Integer> to_integer(const RationalMatrix& m) {
  DenseMatrix<Integer> out(m.rows, m.cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) out.data[k] = m.data[k].get_num();
  return out;
}

// Fraction-free row echelon form over Z; returns the pivot columns. Every
// intermediate entry is a minor of the input, so the divisions are exact.
std::vector<std::size_t> integer_pivot_columns(DenseMatrix<Integer> m) {
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows) continue;
    if (pivot != r) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(pivot, j));
    }
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t j = c + 1; j < m.cols; ++j) {
        Integer v = m(i, j) * m(r, c) - m(i, c) * m(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(v);
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Clears denominators: returns D with D * m integral.
Integer common_denominator(const RationalMatrix& m) {
  Integer d = 1;
  for (const Rational& x : m.data) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

DenseMatrix<Integer> scaled_to_integer(const RationalMatrix& m, const Integer& d) {
  DenseMatrix<Integer> out(m.rows, m.cols);
  for (std::size_t k = 0; k < m.data.size(); ++k) {
    out.data[k] = m.data[k].get_num() * (d / m.data[k].get_den());
  }
  return out;
}

// Product of the nonzero eigenvalues of a nonzero symmetric positive
// semidefinite P, i.e. |q(0)| for det(tI - P) = t^a q(t). With S the pivot
// columns of P, B = P[:, S] spans the image and the product equals
// det(B^T P B) / det(B^T B) = det((P^3)[S, S]) / det((P^2)[S, S]).
Rational pseudo_determinant(const RationalMatrix& p) {
  const Integer d = common_denominator(p);
  const DenseMatrix<Integer> z = scaled_to_integer(p, d);
  const std::size_t n = z.rows;
  const std::vector<std::size_t> s = integer_pivot_columns(z);
  const std::size_t k = s.size();
  if (k == 0) throw InternalError("pseudo-determinant of the zero matrix");
  Integer num;
  Integer den = 1;
  if (k == n) {
    num = bareiss_determinant(z);
  } else {
    // y = z * z[:, S] = (z^2)[:, S].
    DenseMatrix<Integer> y(n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (z(i, l) == 0) continue;
        for (std::size_t j = 0; j < k; ++j) y(i, j) += z(i, l) * z(l, s[j]);
      }
    DenseMatrix<Integer> g1(k, k), g2(k, k);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) g2(a, b) = y(s[a], b);
      for (std::size_t l = 0; l < n; ++l) {
        const Integer& x = z(s[a], l);
        if (x == 0) continue;
        for (std::size_t b = 0; b < k; ++b) g1(a, b) += x * y(l, b);
      }
    }
    num = bareiss_determinant(g1);
    den = bareiss_determinant(g2);
    if (den == 0) throw InternalError("pivot columns of a semidefinite matrix are dependent");
  }
  Integer scale;
  mpz_pow_ui(scale.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(k));
  Rational out(abs(num), abs(den) * scale);
  out.canonicalize();
  if (out == 0) throw InternalError("pseudo-determinant vanished");
  return out;
}

}  // namespace

std::vector<Rational> characteristic_polynomial(const RationalMatrix& m) { return berkowitz(m); }

std::vector<Integer> characteristic_polynomial(const DenseMatrix<Integer>& m) {
  return berkowitz(m);
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant needs a square matrix");
  if (m.rows == 0) return 1;
  if (is_integral(m)) return Rational(bareiss_determinant(to_integer(m)));
  RationalMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::size_t matrix_rank(const RationalMatrix& m) {
  return integer_pivot_columns(scaled_to_integer(m, common_denominator(m))).size();
}

FKValue fk_det_finite(const GroupRingMatrix& a) {
  const RationalMatrix m = regular_rep(a);
  if (std::all_of(m.data.begin(), m.data.end(), [](const Rational& x) { return x == 0; })) {
    return FKValue::from_exact(ExactRadical(), "regular_rep");
  }
  // M M^T and M^T M share their nonzero spectrum; use the smaller one.
  const RationalMatrix mt = transpose(m);
  const RationalMatrix p = m.rows <= m.cols ? m * mt : mt * m;
  const Rational q0 = pseudo_determinant(p);
  const long n = static_cast<long>(a.group()->order());
  return FKValue::from_exact(ExactRadical(q0, Rational(1, 2 * n)), "regular_rep");
}

FKValue fk_det_2x2_trivial(const RationalMatrix& a) {
  if (a.rows != 2 || a.cols != 2) throw DomainError("expected a 2x2 matrix");
  const Rational det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (det != 0) return FKValue::from_exact(ExactRadical(abs(det), 1), "closed_form");
  Rational tr = 0;
  for (const Rational& x : a.data) tr += x * x;
  if (tr == 0) return FKValue::from_exact(ExactRadical(), "closed_form");
  return FKValue::from_exact(ExactRadical(tr, Rational(1, 2)), "closed_form");
}

Rational vn_dim_kernel_finite(const GroupRingMatrix& a) {
  const std::size_t n = a.group()->order();
  const std::size_t rank = matrix_rank(regular_rep(a));
  Rational out(static_cast<long>(a.rows() * n - rank), static_cast<long>(n));
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------- subgroups

void check_embedding(const FiniteGroup& h, const FiniteGroup& g,
                     std::span<const std::size_t> embedding) {
  if (embedding.size() != h.order()) throw DomainError("embedding size differs from subgroup order");
  std::vector<char> hit(g.order());
  for (std::size_t x : embedding) {
    if (x >= g.order()) throw DomainError("embedding target out of range");
    if (hit[x]++) throw DomainError("embedding is not injective");
  }
  for (std::size_t a = 0; a < h.order(); ++a) {
    for (std::size_t b = 0; b < h.order(); ++b) {
      if (embedding[h.multiply(a, b)] != g.multiply(embedding[a], embedding[b])) {
        throw DomainError("embedding is not a homomorphism");
      }
    }
  }
}

GroupRingMatrix induce(const GroupRingMatrix& a, std::span<const std::size_t> embedding,
                       const GroupPtr& target) {
  const FiniteGroup& h = *a.group();
  check_embedding(h, *target, embedding);
  GroupRingMatrix out(target, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      for (std::size_t x = 0; x < h.order(); ++x) out(i, j)[embedding[x]] = a(i, j)[x];
    }
  }
  return out;
}

GroupRingMatrix restrict_to_subgroup(const GroupRingMatrix& a, const GroupPtr& subgroup,
                                     std::span<const std::size_t> embedding) {
  const FiniteGroup& g = *a.group();
  const FiniteGroup& h = *subgroup;
  check_embedding(h, g, embedding);
  const std::size_t n = g.order();
  std::vector<std::size_t> back(n, n);  // G -> H on the image
  for (std::size_t x = 0; x < h.order(); ++x) back[embedding[x]] = x;

  // Right coset representatives and, per element, its coset and H-part: y = h * g_k.
  std::vector<std::size_t> reps, coset(n, n), hpart(n);
  for (std::size_t y = 0; y < n; ++y) {
    if (coset[y] != n) continue;
    const std::size_t k = reps.size();
    reps.push_back(y);
    for (std::size_t x = 0; x < h.order(); ++x) {
      const std::size_t z = g.multiply(embedding[x], y);
      coset[z] = k;
      hpart[z] = x;
    }
  }
  const std::size_t m = reps.size();
  GroupRingMatrix out(subgroup, a.rows() * m, a.cols() * m);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const GroupRingElement& x = a(i, j);
      for (std::size_t y = 0; y < n; ++y) {
        if (x[y] == 0) continue;
        for (std::size_t k = 0; k < m; ++k) {
          // g_k y = h g_l contributes x_y h at block (k, l).
          const std::size_t z = g.multiply(reps[k], y);
          out(i * m + k, j * m + coset[z])[hpart[z]] += x[y];
        }
      }
    }
  }
  return out;
}

}  // namespace fkdet
