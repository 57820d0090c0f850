#pragma once

// Fuglede-Kadison determinants of rectangular matrices over Q[Z^d] by
// reduction to two commutative determinants and their Mahler measures.

#include <cstdint>
#include <vector>

#include "fkdet/fk_value.hpp"
#include "fkdet/laurent.hpp"
#include "fkdet/mahler.hpp"

namespace fkdet {

/// Intermediate objects of the kernel reduction for A (r x s):
/// B (q x r) spans the left kernel, D1 = B*B + AA*, D2 = BB*.
struct PipelineTrace {
  LaurentMatrix a{1, 0, 0};
  std::size_t q = 0;
  LaurentMatrix b{1, 0, 0};
  LaurentMatrix d1{1, 0, 0};
  LaurentMatrix d2{1, 0, 0};
  LaurentPolynomial det_d1;
  LaurentPolynomial det_d2;
  MahlerValue measure_d1;
  MahlerValue measure_d2;
  FKValue value;
};

struct ZdOptions {
  /// Used for rank >= 2; rank 1 always uses Jensen.
  MeasureMethod method = MeasureMethod::boyd_lawton;
  /// Quadrature grid size per axis.
  std::size_t grid = 2048;
  /// Number of Boyd-Lawton tuples.
  std::size_t schedule_count = 4;
  /// Smallest k_2 tried by Boyd-Lawton (raised further when admissibility needs it).
  std::int64_t min_k2 = 25;
  KernelNormalization normalization = KernelNormalization::canonical;
};

/// r - rank of A over the fraction field.
std::size_t vn_dim_kernel_zd(const LaurentMatrix& a);

/// The algebraic part of the reduction for a given kernel basis B with
/// B A = 0; measures and value are left unset. Throws InternalError if
/// B A != 0 or a determinant vanishes.
PipelineTrace reduce_with_kernel(const LaurentMatrix& a, const LaurentMatrix& b);

/// The algebraic part with the kernel basis from kernel_basis(A, normalization).
PipelineTrace reduce(const LaurentMatrix& a,
                     KernelNormalization normalization = KernelNormalization::canonical);

/// Completes a reduced trace with Mahler measures and the determinant
/// sqrt(M(det D1) / M(det D2)).
void evaluate(PipelineTrace& trace, const ZdOptions& options = {});

/// reduce + evaluate.
PipelineTrace fk_det_zd(const LaurentMatrix& a, const ZdOptions& options = {});

/// Specialization tuples (k_2, ..., k_d) certified against the support of
/// det D1 and det D2: k_2 > c_1 and k_{i+1} > c_i k_i.
struct SpecSchedule {
  std::vector<std::int64_t> b;  // per-axis support bounds, axes 1..d
  std::vector<std::int64_t> c;  // c_i = 2 (b_1 + ... + b_i), i = 1..d-1
  std::vector<SpecTuple> tuples;
};

bool is_admissible(const SpecSchedule& schedule, const SpecTuple& ks);

/// `count` admissible tuples, k_2 = max(c_1 + 1, min_k2) 2^j and
/// k_{i+1} = max(c_i + 1, k_i) k_i + 1. Throws DomainError for rank 1.
SpecSchedule build_schedule(const PipelineTrace& trace, std::size_t count,
                            std::int64_t min_k2 = 1);

/// Evaluates det(A[ks]) over Z for every tuple through the specialized
/// reduction (B taken from the unspecialized trace) and Jensen. Returns the
/// last value; error estimate is the spread over the final three.
FKValue fk_det_zd_via_specialization(const LaurentMatrix& a, const SpecSchedule& schedule);

}  // namespace fkdet
