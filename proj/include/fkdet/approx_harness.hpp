#pragma once

// Finite-quotient experiments for matrices over Z[Z^d]: reductions to
// Z/n_1 x ... x Z/n_d, trace matching, operator norm bounds and sequences of
// stage determinants compared against the determinant over Z^d.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fkdet/fk_finite.hpp"
#include "fkdet/fk_zd.hpp"
#include "fkdet/laurent.hpp"

namespace fkdet {

using Moduli = std::vector<std::size_t>;

struct QuotientChain {
  std::size_t rank = 1;
  std::vector<Moduli> stages;

  /// True when every stage divides the next componentwise.
  bool is_divisibility_chain() const;
};

/// Stages (n) for n = first..last in rank 1.
QuotientChain chain_range(std::size_t first, std::size_t last);
/// Stages (n, ..., n), (2n, ..., 2n), ... with `count` entries.
QuotientChain chain_doubling(std::size_t rank, std::size_t n, std::size_t count);
/// Stages (p, ..., p) over the first `count` primes.
QuotientChain chain_primes(std::size_t rank, std::size_t count);
/// Parses "a..b" or a comma list "2,4,8" (rank 1) or "2x3,4x6" (rank d).
QuotientChain parse_chain(std::string_view text);

/// Exponents reduced componentwise mod n_j over make_abelian(moduli).
GroupRingMatrix reduce_mod(const LaurentMatrix& a, std::span<const std::size_t> moduli);
GroupRingElement reduce_mod(const LaurentPolynomial& p, std::span<const std::size_t> moduli);

/// Coefficient of the unit element.
Rational trace_element(const LaurentPolynomial& p);
/// Sum of the unit coefficients along the diagonal.
Rational matrix_trace(const LaurentMatrix& a);
Rational matrix_trace(const GroupRingMatrix& a);

struct TraceMatch {
  std::vector<Rational> traces_zd;        // tr A^m, m = 1..D
  std::vector<Rational> traces_quotient;  // tr (A reduced)^m at the given moduli
  bool match = false;
  /// Least n such that all traces agree at (n, ..., n).
  std::size_t least_uniform_modulus = 0;
  /// 2 b_j + 1 with b_j the largest |exponent| on axis j in A^1..A^D; every
  /// componentwise larger tuple is guaranteed to match.
  Moduli certified_moduli;
};

TraceMatch trace_match_check(const LaurentMatrix& a, std::size_t degree,
                             std::span<const std::size_t> moduli);

/// sqrt((2m - 1) m) * max entry l1-norm with m = max(rows, cols); bounds the
/// operator norm over Z^d and over every finite quotient.
double norm_bound(const LaurentMatrix& a);
double norm_bound(const GroupRingMatrix& a);

struct StageValue {
  Moduli moduli;
  FKValue value;
  Rational vn_dim_kernel;
};

struct ApproxOptions {
  ZdOptions zd;
  /// Slack in the sub-approximation inequality.
  double tolerance = 1e-6;
  /// A final stage this close to the reference counts as convergence evidence.
  double convergence_tolerance = 1e-3;
  /// Stages with a larger quotient group are refused.
  std::size_t max_stage_order = 4096;
};

struct DetSequence {
  QuotientChain chain;
  std::vector<StageValue> stages;
  FKValue limit_reference;
  /// Estimate of the limsup of the stage values: the smaller of the largest
  /// value over the final half of the chain and, with three or more stages
  /// there, the intercept of a least-squares fit of ln(value) against 1/|Q|.
  double limsup_estimate = 0;
  /// limsup_estimate <= reference + tolerance + reference error.
  bool limsup_ok = false;
  double max_stage_value = 0;
  double final_gap = 0;
  /// "evidence of convergence" or "no evidence of convergence".
  std::string convergence;
};

/// Stage determinants over the quotients and the reference determinant over Z^d.
DetSequence det_sequence(const LaurentMatrix& a, const QuotientChain& chain,
                         const ApproxOptions& options = {});

/// Two columns: stage moduli (joined by 'x') and value.
std::string to_csv(const DetSequence& s);

}  // namespace fkdet
