#pragma once

// Numerical Mahler measures: Jensen's formula from the roots in one
// variable, torus quadrature and the Boyd-Lawton specialization limit in
// several variables.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fkdet/laurent.hpp"

namespace fkdet {

/// p(z) = c z^k prod (z - a_i).
struct RootList {
  double leading_magnitude = 0;                 // |c|
  std::vector<std::complex<double>> roots;      // with multiplicity
  std::int64_t shift = 0;                       // k
  std::vector<double> root_errors;              // per-root error estimate
};

enum class MeasureMethod { jensen, quadrature, boyd_lawton };

std::string to_string(MeasureMethod m);
MeasureMethod parse_measure_method(std::string_view name);

struct MahlerValue {
  double value = 1;
  double log_value = 0;
  MeasureMethod method = MeasureMethod::jensen;
  double error_estimate = 0;
};

/// Roots of |a| in (1 - tol, 1 + tol] count as lying on the unit circle.
inline constexpr double kUnitCircleTolerance = 1e-12;
/// Quadrature samples with |p| below this are treated as exact zeros.
inline constexpr double kQuadratureZeroCutoff = 1e-300;
/// Degrees above this use Aberth-Ehrlich instead of companion eigenvalues.
inline constexpr std::size_t kCompanionMaxDegree = 30;

/// All complex roots of sum_i coeffs[i] z^i (coeffs ascending, nonzero top).
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);
std::vector<std::complex<double>> companion_roots(std::span<const double> coeffs);
std::vector<std::complex<double>> aberth_roots(std::span<const double> coeffs);

RootList roots_one_var(const LaurentPolynomial& p);

MahlerValue mahler_jensen(const LaurentPolynomial& p);
/// Jensen's formula for a dense one-variable polynomial (ascending coefficients).
MahlerValue mahler_jensen(std::span<const double> coeffs);

/// True when p has rank 1, leading and trailing coefficients of modulus 1 and
/// no root of modulus above 1 + `tolerance`, i.e. M(p) = 1 (Kronecker).
bool has_unit_measure(std::span<const double> coeffs, double tolerance = 1e-10);

/// exp of the mean of ln|p| over the N^d midpoint grid (angles 2 pi (k + 1/2) / N).
MahlerValue log_mahler_quadrature(const LaurentPolynomial& p, std::size_t grid);

/// One specialization tuple (k_2, ..., k_d).
using SpecTuple = std::vector<std::int64_t>;

/// Jensen measure of p(z, z^{k_2}, ..., z^{k_d}) at the last tuple; the error
/// estimate is the spread of the values at the final three tuples.
MahlerValue mahler_boyd_lawton(const LaurentPolynomial& p, std::span<const SpecTuple> schedule);

/// k_2 in {25, 50, 100, 200}, inner multipliers k_{i+1} = k_i^2 + 1.
std::vector<SpecTuple> default_boyd_lawton_schedule(std::size_t rank);

}  // namespace fkdet
