#pragma once

// Random generators shared by the property tests. Seeds are fixed so every
// run sees the same cases.

#include <cmath>
#include <cstdint>
#include <random>

#include "fkdet/fk_finite.hpp"
#include "fkdet/laurent.hpp"

namespace fkdet::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Up to `terms` terms with exponents in [lo, hi] on every axis and
/// coefficients in [-c, c].
inline LaurentPolynomial random_poly(Rng& rng, std::size_t rank, std::int64_t lo, std::int64_t hi,
                                     std::int64_t c, std::size_t terms) {
  LaurentPolynomial p(rank);
  for (std::size_t t = 0; t < terms; ++t) {
    ExponentVector e(rank);
    for (auto& x : e) x = uniform(rng, lo, hi);
    p.add_term(e, Rational(uniform(rng, -c, c)));
  }
  return p;
}

/// Dense one-variable polynomial of degree <= deg, coefficients in [-c, c].
inline LaurentPolynomial random_dense(Rng& rng, std::int64_t deg, std::int64_t c) {
  LaurentPolynomial p(1);
  for (std::int64_t k = 0; k <= deg; ++k) p.add_term({k}, Rational(uniform(rng, -c, c)));
  return p;
}

inline LaurentMatrix random_matrix(Rng& rng, std::size_t rank, std::size_t rows, std::size_t cols,
                                   std::int64_t lo, std::int64_t hi, std::int64_t c,
                                   std::size_t terms) {
  LaurentMatrix m(rank, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_poly(rng, rank, lo, hi, c, terms);
  return m;
}

inline GroupRingElement random_element(Rng& rng, const GroupPtr& g, std::int64_t c) {
  GroupRingElement x(g);
  for (std::size_t h = 0; h < g->order(); ++h) x[h] = Rational(uniform(rng, -c, c));
  return x;
}

inline GroupRingMatrix random_group_matrix(Rng& rng, const GroupPtr& g, std::size_t rows,
                                           std::size_t cols, std::int64_t c) {
  GroupRingMatrix m(g, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_element(rng, g, c);
  return m;
}

inline bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace fkdet::testing
