#include <cctype>
#include <map>
#include <string>

#include "fkdet/errors.hpp"
#include "fkdet/laurent.hpp"

namespace fkdet {
namespace {

struct ParsedTerm {
  Rational coefficient;
  std::map<std::size_t, std::int64_t> exponents;  // 1-based variable index
};

class PolynomialParser {
 public:
  explicit PolynomialParser(std::string_view text) : text_(text) {}

  std::vector<ParsedTerm> parse() {
    std::vector<ParsedTerm> terms;
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    terms.push_back(term(negative));
    while (true) {
      skip_space();
      if (at_end()) break;
      const char op = peek();
      if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
      ++pos_;
      terms.push_back(term(op == '-'));
    }
    return terms;
  }

  bool saw_bare_variable() const { return bare_; }
  std::size_t max_index() const { return max_index_; }

 private:
  ParsedTerm term(bool negative) {
    skip_space();
    ParsedTerm t{Rational(negative ? -1 : 1), {}};
    bool have_coefficient = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      Rational c{Integer(digits())};
      skip_space();
      if (!at_end() && peek() == '/') {
        ++pos_;
        skip_space();
        const Integer den(digits());
        if (den == 0) fail("zero denominator");
        c /= Rational(den);
      }
      t.coefficient *= c;
      have_coefficient = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        if (at_end() || peek() != 'z') fail("expected variable after '*'");
      }
    }
    bool have_factor = false;
    while (true) {
      skip_space();
      if (at_end() || peek() != 'z') break;
      factor(t);
      have_factor = true;
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        if (at_end() || peek() != 'z') fail("expected variable after '*'");
      }
    }
    if (!have_coefficient && !have_factor) fail("expected a term");
    return t;
  }

  void factor(ParsedTerm& t) {
    ++pos_;  // 'z'
    std::size_t index = 1;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::size_t start = pos_;
      index = std::stoul(digits());
      if (index == 0) fail("variable index must be >= 1", start);
    } else {
      bare_ = true;
    }
    max_index_ = std::max(max_index_, index);
    std::int64_t power = 1;
    skip_space();
    if (!at_end() && peek() == '^') {
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
      const std::string d = digits();
      try {
        power = std::stoll(d);
      } catch (const std::out_of_range&) {
        fail("exponent out of range", start);
      }
      if (neg) power = -power;
      if (paren) {
        skip_space();
        if (at_end() || peek() != ')') fail("expected ')'");
        ++pos_;
      }
    }
    t.exponents[index] += power;
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
  std::size_t pos_ = 0;
  bool bare_ = false;
  std::size_t max_index_ = 0;
};

}  // namespace

LaurentPolynomial parse_polynomial(std::string_view text, std::size_t rank) {
  PolynomialParser parser(text);
  const std::vector<ParsedTerm> terms = parser.parse();
  const std::size_t needed = std::max<std::size_t>(parser.max_index(), 1);
  if (rank == 0) rank = needed;
  if (needed > rank) {
    throw ParseError("variable z" + std::to_string(needed) + " exceeds rank " +
                         std::to_string(rank),
                     0);
  }
  if (parser.saw_bare_variable() && rank != 1) {
    throw ParseError("bare variable z is only allowed in rank 1", 0);
  }
  LaurentPolynomial p(rank);
  for (const ParsedTerm& t : terms) {
    ExponentVector e(rank, 0);
    for (const auto& [index, power] : t.exponents) e[index - 1] += power;
    p.add_term(e, t.coefficient);
  }
  return p;
}

}  // namespace fkdet
