#include "fkdet/fk_zd.hpp"

#include <algorithm>
#include <cmath>

#include "fkdet/errors.hpp"

namespace fkdet {
namespace {

bool is_zero_matrix(const LaurentMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

// |c| when p = c z^k, otherwise nothing.
std::optional<Rational> monomial_magnitude(const LaurentPolynomial& p) {
  if (!p.is_monomial()) return std::nullopt;
  return abs(p.terms().begin()->second);
}

MahlerValue measure(const LaurentPolynomial& p, const ZdOptions& options) {
  if (p.rank() == 1) return mahler_jensen(p);
  if (auto c = monomial_magnitude(p)) {
    MahlerValue v;
    v.log_value = log_abs(*c);
    v.value = std::exp(v.log_value);
    v.method = options.method;
    return v;
  }
  switch (options.method) {
    case MeasureMethod::quadrature:
      return log_mahler_quadrature(p, options.grid);
    case MeasureMethod::boyd_lawton: {
      // Certify the schedule against this polynomial alone.
      PipelineTrace t;
      t.det_d1 = p;
      t.det_d2 = LaurentPolynomial::constant(p.rank(), 1);
      const SpecSchedule s = build_schedule(t, options.schedule_count, options.min_k2);
      return mahler_boyd_lawton(p, s.tuples);
    }
    case MeasureMethod::jensen:
      break;
  }
  throw DomainError("Jensen's formula needs a one-variable polynomial");
}

}  // namespace

std::size_t vn_dim_kernel_zd(const LaurentMatrix& a) {
  return a.rows() - rank_over_fraction_field(a);
}

PipelineTrace reduce_with_kernel(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (b.cols() != a.rows() || b.rank() != a.rank()) {
    throw std::invalid_argument("kernel basis shape does not match A");
  }
  PipelineTrace t;
  t.a = a;
  t.q = b.rows();
  t.b = b;
  if (t.q > 0 && !is_zero_matrix(b * a)) throw InternalError("kernel basis does not annihilate A");
  const LaurentMatrix as = adjoint(a);
  const LaurentMatrix bs = adjoint(b);
  t.d1 = a * as;
  if (t.q > 0) t.d1 = bs * b + t.d1;
  t.d2 = t.q > 0 ? b * bs : LaurentMatrix(a.rank(), 0, 0);
  t.det_d1 = determinant(t.d1);
  t.det_d2 = t.q > 0 ? determinant(t.d2) : LaurentPolynomial::constant(a.rank(), 1);
  if (t.det_d1.is_zero()) throw InternalError("det D1 vanished for " + a.to_string());
  if (t.det_d2.is_zero()) throw InternalError("det D2 vanished for " + a.to_string());
  return t;
}

PipelineTrace reduce(const LaurentMatrix& a, KernelNormalization normalization) {
  const KernelBasis k = kernel_basis(a, normalization);
  return reduce_with_kernel(a, k.basis);
}

void evaluate(PipelineTrace& t, const ZdOptions& options) {
  t.measure_d1 = measure(t.det_d1, options);
  t.measure_d2 = measure(t.det_d2, options);
  FKValue v;
  v.log_value = 0.5 * (t.measure_d1.log_value - t.measure_d2.log_value);
  v.value = std::exp(v.log_value);
  const MeasureMethod used = t.a.rank() == 1 ? MeasureMethod::jensen : options.method;
  v.method = "pipeline/" + to_string(used);
  // First-order propagation of the relative errors through sqrt(M1 / M2).
  v.error_estimate = 0.5 * v.value *
                     (t.measure_d1.error_estimate / t.measure_d1.value +
                      t.measure_d2.error_estimate / t.measure_d2.value);
  const auto c1 = monomial_magnitude(t.det_d1);
  const auto c2 = monomial_magnitude(t.det_d2);
  if (c1 && c2) {
    v.exact = ExactRadical(*c1 / *c2, Rational(1, 2));
    v.value = v.exact->value();
    v.log_value = v.exact->log_value();
    v.error_estimate = 0;
  }
  t.value = v;
}

PipelineTrace fk_det_zd(const LaurentMatrix& a, const ZdOptions& options) {
  PipelineTrace t = reduce(a, options.normalization);
  evaluate(t, options);
  return t;
}

bool is_admissible(const SpecSchedule& s, const SpecTuple& ks) {
  if (ks.size() != s.c.size()) return false;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    // k_2 > c_1; k_{i+1} > c_i k_i.
    const std::int64_t bound = i == 0 ? s.c[0] : s.c[i] * ks[i - 1];
    if (ks[i] <= bound) return false;
  }
  return true;
}

SpecSchedule build_schedule(const PipelineTrace& trace, std::size_t count, std::int64_t min_k2) {
  const std::size_t d = trace.det_d1.rank();
  if (d < 2) throw DomainError("specialization schedules need rank >= 2");
  SpecSchedule s;
  for (std::size_t axis = 0; axis < d; ++axis) {
    s.b.push_back(std::max(support_bound(trace.det_d1, axis), support_bound(trace.det_d2, axis)));
  }
  std::int64_t sum = 0;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    sum += s.b[i];
    s.c.push_back(2 * sum);
  }
  const std::int64_t k2 = std::max<std::int64_t>({s.c[0] + 1, min_k2, 1});
  for (std::size_t j = 0; j < count; ++j) {
    SpecTuple t{k2 << j};
    for (std::size_t i = 1; i < s.c.size(); ++i) {
      const std::int64_t k = t.back();
      t.push_back(std::max(s.c[i] + 1, k) * k + 1);
    }
    if (!is_admissible(s, t)) throw InternalError("constructed an inadmissible tuple");
    s.tuples.push_back(std::move(t));
  }
  return s;
}

FKValue fk_det_zd_via_specialization(const LaurentMatrix& a, const SpecSchedule& schedule) {
  if (a.rank() < 2) throw DomainError("specialization needs rank >= 2");
  if (schedule.tuples.empty()) throw DomainError("empty specialization schedule");
  if (schedule.c.size() + 1 != a.rank()) throw DomainError("schedule rank does not match A");
  const PipelineTrace base = reduce(a);
  std::vector<double> values;
  FKValue last;
  for (const SpecTuple& ks : schedule.tuples) {
    if (!is_admissible(schedule, ks)) throw DomainError("inadmissible specialization tuple");
    const LaurentMatrix b = base.q > 0 ? specialize(base.b, ks) : LaurentMatrix(1, 0, a.rows());
    PipelineTrace t = reduce_with_kernel(specialize(a, ks), b);
    evaluate(t);
    values.push_back(t.value.value);
    last = t.value;
  }
  last.method = "specialization/jensen";
  last.exact.reset();
  last.error_estimate = 0;
  const std::size_t first = values.size() >= 3 ? values.size() - 3 : 0;
  for (std::size_t i = first; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      last.error_estimate = std::max(last.error_estimate, std::fabs(values[i] - values[j]));
  return last;
}

}  // namespace fkdet
