#pragma once

// Exhaustive desk-scale searches for the smallest Fuglede-Kadison
// determinant above 1 (Lehmer constants of a group) plus the known exact
// values and bounds for finite groups.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fkdet/fk_finite.hpp"
#include "fkdet/fk_value.hpp"
#include "fkdet/fk_zd.hpp"

namespace fkdet {

/// Lambda: all matrices; Lambda_1: 1x1 only; superscript w: injective only.
enum class LehmerVariant { lambda, lambda_1, lambda_w, lambda_w_1 };

std::string to_string(LehmerVariant v);
LehmerVariant parse_lehmer_variant(std::string_view name);
bool is_weak(LehmerVariant v);
bool is_single_element(LehmerVariant v);

enum class SearchGroup { finite, zd };

struct SearchSpace {
  SearchGroup kind = SearchGroup::finite;
  /// Finite case: the group (trivial and cyclic groups via make_cyclic).
  GroupPtr group;
  /// Z^d case: exponents of axis i range over 0..box[i]; d = box.size().
  std::vector<std::int64_t> box;
  std::size_t rows = 1;
  std::size_t cols = 1;
  /// Coefficients range over -coeff_bound..coeff_bound.
  std::int64_t coeff_bound = 1;
  /// At most this many nonzero coefficients in total; 0 means no limit.
  std::size_t support_limit = 0;
  /// Maximal number of determinant evaluations.
  std::uint64_t budget = 10'000'000;

  std::string description() const;
};

struct ScanOptions {
  /// Values below 1 + one_threshold count as determinant one.
  double one_threshold = 1e-9;
  /// Keep every candidate with determinant in (1, survey_max].
  bool collect_survey = false;
  double survey_max = 1.5;
  /// Measure settings for Z^d with d >= 2.
  ZdOptions zd{MeasureMethod::boyd_lawton, 1024, 3, 50, KernelNormalization::canonical};
};

struct SurveyEntry {
  std::string witness;
  double value;
};

struct ScanReport {
  SearchSpace space;
  LehmerVariant variant = LehmerVariant::lambda;
  std::optional<FKValue> infimum;
  std::string witness;
  std::uint64_t count_enumerated = 0;  // before symmetry reduction
  std::uint64_t count_examined = 0;    // determinant evaluations
  std::uint64_t count_det_one = 0;
  std::uint64_t count_non_injective = 0;
  double one_threshold = 1e-9;
  bool budget_exceeded = false;
  std::vector<SurveyEntry> survey;
};

/// Enumerates the space in lexicographic order, one representative per
/// orbit under global sign, monomial (group element) multiplication and
/// the adjoint for single elements, and returns the least determinant
/// classified above 1. Exceeding the budget yields a partial report.
ScanReport scan(const SearchSpace& space, LehmerVariant variant, const ScanOptions& options = {});

/// Re-evaluates a witness string produced by scan.
FKValue evaluate_witness(const SearchSpace& space, const std::string& witness,
                         const ScanOptions& options = {});

struct ConstantEntry {
  std::string name;          // "Lambda", "Lambda_1", "Lambda^w", "Lambda^w_1"
  bool exact;                // lower == upper
  ExactRadical lower;
  ExactRadical upper;
};

/// Known values and two-sided bounds: trivial group, Z/2, Z/n with n odd,
/// any finite group of order >= 3.
std::vector<ConstantEntry> exact_constants(const FiniteGroup& g);

/// (m - 1)^(1/m), an upper bound for Lambda^w_1 of any group with a finite
/// subgroup of order m >= 3.
ExactRadical torsion_bound_check(std::int64_t m);

}  // namespace fkdet
