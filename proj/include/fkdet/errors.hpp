#pragma once

#include <stdexcept>
#include <string>

namespace fkdet {

/// Mathematically invalid input: zero polynomial, malformed group table,
/// mixed groups, an inadmissible specialization tuple.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not match the polynomial / element grammar.
class ParseError : public DomainError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DomainError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A computation exceeded its configured evaluation budget.
class BudgetError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An invariant that holds mathematically was violated numerically or
/// algebraically; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fkdet
