#include "fkdet/mahler.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fkdet/errors.hpp"
#include "fkdet/parallel.hpp"
#include "univariate.hpp"

namespace fkdet {

std::string to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::jensen:
      return "jensen";
    case MeasureMethod::quadrature:
      return "quadrature";
    case MeasureMethod::boyd_lawton:
      return "boyd_lawton";
  }
  return "unknown";
}

MeasureMethod parse_measure_method(std::string_view name) {
  if (name == "jensen") return MeasureMethod::jensen;
  if (name == "quadrature") return MeasureMethod::quadrature;
  if (name == "boyd_lawton") return MeasureMethod::boyd_lawton;
  throw std::invalid_argument("unknown measure method: " + std::string(name));
}

namespace {

using cld = std::complex<long double>;

// Parlett-Reinsch balancing of a companion matrix (radix 2).
void balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double c = m.col(i).lpNorm<1>() - std::fabs(m(i, i));
      const double r = m.row(i).lpNorm<1>() - std::fabs(m(i, i));
      if (c == 0 || r == 0) continue;
      double f = 1, cc = c;
      const double s = c + r;
      double g = r / 2;
      while (cc < g) {
        f *= 2;
        cc *= 4;
      }
      g = r * 2;
      while (cc > g) {
        f /= 2;
        cc /= 4;
      }
      if ((cc + r) / f < 0.95 * s) {
        changed = true;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

// Newton ratio p(z)/p'(z); for |z| > 1 evaluates the reversed polynomial in 1/z.
cld newton_ratio(std::span<const double> c, cld z, long double* residual = nullptr) {
  const std::size_t n = c.size() - 1;
  if (std::abs(z) <= 1) {
    cld p = c[n], dp = 0;
    for (std::size_t i = n; i-- > 0;) {
      dp = dp * z + p;
      p = p * z + static_cast<long double>(c[i]);
    }
    if (residual) *residual = std::abs(p);
    return p / dp;
  }
  const cld w = cld(1) / z;
  cld r = c[0], dr = 0;  // reversed polynomial sum c_i w^{n-i}
  for (std::size_t i = 1; i <= n; ++i) {
    dr = dr * w + r;
    r = r * w + static_cast<long double>(c[i]);
  }
  if (residual) *residual = std::abs(r);  // |p(z)| / |z|^n
  // p(z) = z^n r(w), p'(z) = n z^{n-1} r(w) - z^{n-2} r'(w).
  return z * r / (static_cast<long double>(n) * r - w * dr);
}

std::vector<double> to_doubles(const detail::IntPoly& p) {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(c.get_d());
  return out;
}

// Roots of a squarefree polynomial with per-root error estimates.
void simple_roots(const detail::IntPoly& p, std::vector<std::complex<double>>& roots,
                  std::vector<double>& errors) {
  const std::vector<double> c = to_doubles(p);
  std::vector<std::complex<double>> found = polynomial_roots(c);
  for (auto& z : found) {
    cld x = z;
    long double res = 0;
    cld step = newton_ratio(c, x, &res);
    for (int it = 0; it < 3; ++it) {
      const cld y = x - step;
      long double res_y = 0;
      const cld step_y = newton_ratio(c, y, &res_y);
      if (!(res_y < res)) break;
      x = y;
      res = res_y;
      step = step_y;
    }
    roots.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
    const double err = static_cast<double>(std::abs(step));
    errors.push_back(std::isfinite(err) ? err + 4e-16 * std::abs(z) : 1.0);
  }
}

struct Stripped {
  detail::IntPoly coeffs;  // integer, primitive up to `scale`
  double log_leading = 0;  // ln|c|
  std::int64_t shift = 0;
  bool integer_coefficients = true;
};

Stripped strip(const LaurentPolynomial& p) {
  if (p.rank() != 1) throw DomainError("one-variable polynomial expected");
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  Stripped s;
  s.shift = p.terms().begin()->first[0];
  const std::int64_t top = p.terms().rbegin()->first[0];
  Integer den = 1;
  for (const auto& [e, c] : p.terms()) den = lcm(den, Integer(c.get_den()));
  s.coeffs.assign(static_cast<std::size_t>(top - s.shift + 1), Integer(0));
  for (const auto& [e, c] : p.terms()) {
    s.coeffs[static_cast<std::size_t>(e[0] - s.shift)] = Integer(c.get_num()) * (den / Integer(c.get_den()));
    if (c.get_den() != 1) s.integer_coefficients = false;
  }
  s.log_leading = log_abs(p.terms().rbegin()->second);
  return s;
}

MahlerValue jensen_from_roots(double log_leading, const std::vector<std::complex<double>>& roots,
                              const std::vector<double>& errors) {
  double log_m = log_leading;
  double rel_err = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double r = std::abs(roots[i]);
    if (r > 1 + kUnitCircleTolerance) log_m += std::log(r);
    if (r + errors[i] > 1) rel_err += errors[i] / std::max(r, 1.0);
  }
  MahlerValue v;
  v.log_value = log_m;
  v.value = std::exp(log_m);
  v.method = MeasureMethod::jensen;
  v.error_estimate = v.value * (rel_err + 1e-15 * (1 + static_cast<double>(roots.size())));
  return v;
}

RootList roots_of(const detail::IntPoly& coeffs, double log_leading, std::int64_t shift) {
  RootList out;
  out.leading_magnitude = std::exp(log_leading);
  out.shift = shift;
  for (const auto& layer : detail::squarefree_layers(coeffs)) {
    simple_roots(layer, out.roots, out.root_errors);
  }
  return out;
}

}  // namespace

std::vector<std::complex<double>> companion_roots(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {std::complex<double>(-coeffs[0] / coeffs[1], 0)};
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 1; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1;
  for (std::size_t i = 0; i < n; ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -coeffs[i] / coeffs[n];
  }
  balance(m);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw InternalError("companion eigenvalue solver failed");
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

std::vector<std::complex<double>> aberth_roots(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  // Initial guesses on the circle of radius |c_0 / c_n|^{1/n}.
  const double radius =
      coeffs[0] == 0 ? 1.0 : std::pow(std::fabs(coeffs[0] / coeffs[n]), 1.0 / static_cast<double>(n));
  std::vector<cld> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double angle = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = std::polar<long double>(radius, angle);
  }
  std::vector<bool> done(n, false);
  std::size_t remaining = n;
  for (int iter = 0; iter < 2000 && remaining > 0; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const cld ratio = newton_ratio(coeffs, z[i]);
      cld sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) sum += cld(1) / (z[i] - z[j]);
      }
      const cld w = ratio / (cld(1) - ratio * sum);
      z[i] -= w;
      if (std::abs(w) <= 4e-17L * std::max<long double>(1, std::abs(z[i])) || !std::isfinite(std::abs(w))) {
        done[i] = true;
        --remaining;
      }
    }
  }
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (const auto& x : z) out.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  return out;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  if (coeffs.empty() || coeffs.back() == 0) throw std::invalid_argument("polynomial_roots: zero leading coefficient");
  // Roots at the origin are stripped explicitly.
  std::size_t zeros = 0;
  while (coeffs[zeros] == 0) ++zeros;
  std::span<const double> rest = coeffs.subspan(zeros);
  std::vector<std::complex<double>> roots =
      rest.size() - 1 <= kCompanionMaxDegree ? companion_roots(rest) : aberth_roots(rest);
  roots.insert(roots.end(), zeros, std::complex<double>(0, 0));
  return roots;
}

RootList roots_one_var(const LaurentPolynomial& p) {
  const Stripped s = strip(p);
  return roots_of(s.coeffs, s.log_leading, s.shift);
}

MahlerValue mahler_jensen(const LaurentPolynomial& p) {
  const Stripped s = strip(p);
  const RootList roots = roots_of(s.coeffs, s.log_leading, s.shift);
  return jensen_from_roots(s.log_leading, roots.roots, roots.root_errors);
}

MahlerValue mahler_jensen(std::span<const double> coeffs) {
  std::size_t lo = 0, hi = coeffs.size();
  while (lo < hi && coeffs[lo] == 0) ++lo;
  while (hi > lo && coeffs[hi - 1] == 0) --hi;
  if (lo == hi) throw DomainError("Mahler measure of the zero polynomial");
  detail::IntPoly ints;
  for (std::size_t i = lo; i < hi; ++i) {
    if (coeffs[i] != std::trunc(coeffs[i])) throw std::invalid_argument("integer coefficients expected");
    ints.emplace_back(coeffs[i]);
  }
  const double log_leading = std::log(std::fabs(coeffs[hi - 1]));
  const RootList roots = roots_of(ints, log_leading, static_cast<std::int64_t>(lo));
  return jensen_from_roots(log_leading, roots.roots, roots.root_errors);
}

bool has_unit_measure(std::span<const double> coeffs, double tolerance) {
  std::size_t lo = 0, hi = coeffs.size();
  while (lo < hi && coeffs[lo] == 0) ++lo;
  while (hi > lo && coeffs[hi - 1] == 0) --hi;
  if (lo == hi) return false;
  if (std::fabs(coeffs[lo]) != 1 || std::fabs(coeffs[hi - 1]) != 1) return false;
  detail::IntPoly ints;
  for (std::size_t i = lo; i < hi; ++i) ints.emplace_back(coeffs[i]);
  const RootList roots = roots_of(ints, 0, 0);
  return std::all_of(roots.roots.begin(), roots.roots.end(),
                     [&](const auto& z) { return std::abs(z) <= 1 + tolerance; });
}

MahlerValue log_mahler_quadrature(const LaurentPolynomial& p, std::size_t grid) {
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  if (grid < 2) throw std::invalid_argument("quadrature grid size must be >= 2");
  const std::size_t d = p.rank();

  // Midpoint grid theta_k = 2 pi (k + 1/2) / N, which never samples a root of
  // unity of low order. A term then contributes
  // c * exp(i pi sum_j e_j / N) * omega^(sum_j e_j k_j mod N).
  struct Term {
    std::vector<std::size_t> residues;  // e_j mod N
    std::complex<double> coeff;
  };
  auto make_terms = [&](std::size_t n) {
    std::vector<Term> terms;
    for (const auto& [e, c] : p.terms()) {
      std::int64_t total = 0;
      Term t{{}, 0};
      for (std::int64_t x : e) {
        const auto m = static_cast<std::int64_t>(n);
        t.residues.push_back(static_cast<std::size_t>(((x % m) + m) % m));
        total += x;
      }
      const double half_step = std::numbers::pi * static_cast<double>(total % (2 * static_cast<std::int64_t>(n))) /
                               static_cast<double>(n);
      t.coeff = std::polar(c.get_d(), half_step);
      terms.push_back(std::move(t));
    }
    return terms;
  };

  // Returns (sum of ln|p| over the full grid, same over the even sub-grid).
  auto grid_sums = [&](std::size_t n) -> std::pair<long double, long double> {
    const std::vector<Term> terms = make_terms(n);
    std::vector<std::complex<double>> omega(n);
    for (std::size_t k = 0; k < n; ++k) {
      omega[k] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    }
    std::vector<long double> full(n, 0), even(n, 0);
    std::size_t inner = 1;
    for (std::size_t j = 1; j < d; ++j) inner *= n;
    parallel_for(n, [&](std::size_t k0) {
      std::vector<std::size_t> base(terms.size());
      std::vector<std::size_t> k(d, 0);
      k[0] = k0;
      long double acc = 0, acc_even = 0;
      for (std::size_t idx = 0; idx < inner; ++idx) {
        // Decode the trailing coordinates of the multi-index (last axis fastest).
        std::size_t rem = idx;
        bool all_even = k0 % 2 == 0;
        for (std::size_t j = d; j-- > 1;) {
          k[j] = rem % n;
          rem /= n;
          all_even = all_even && k[j] % 2 == 0;
        }
        std::complex<double> value = 0;
        for (std::size_t t = 0; t < terms.size(); ++t) {
          std::size_t phase = 0;
          for (std::size_t j = 0; j < d; ++j) phase = (phase + terms[t].residues[j] * k[j]) % n;
          value += terms[t].coeff * omega[phase];
        }
        const double mag = std::abs(value);
        if (mag < kQuadratureZeroCutoff) continue;
        const double l = std::log(mag);
        acc += l;
        if (all_even) acc_even += l;
      }
      full[k0] = acc;
      even[k0] = acc_even;
    });
    long double total = 0, total_even = 0;
    for (std::size_t k0 = 0; k0 < n; ++k0) {
      total += full[k0];
      total_even += even[k0];
    }
    return {total, total_even};
  };

  const auto points = [&](std::size_t n) { return std::pow(static_cast<long double>(n), d); };
  const auto [sum, sum_even] = grid_sums(grid);
  const long double log_full = sum / points(grid);
  long double log_half;
  if (grid % 2 == 0) {
    log_half = sum_even / points(grid / 2);
  } else {
    log_half = grid_sums(grid / 2).first / points(grid / 2);
  }
  MahlerValue v;
  v.log_value = static_cast<double>(log_full);
  v.value = std::exp(v.log_value);
  v.method = MeasureMethod::quadrature;
  v.error_estimate = std::fabs(v.value - std::exp(static_cast<double>(log_half)));
  return v;
}

MahlerValue mahler_boyd_lawton(const LaurentPolynomial& p, std::span<const SpecTuple> schedule) {
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  if (schedule.empty()) throw std::invalid_argument("Boyd-Lawton schedule is empty");
  std::vector<double> values;
  for (const SpecTuple& ks : schedule) {
    const LaurentPolynomial q = specialize(p, ks);
    if (q.is_zero()) {
      std::string tuple;
      for (auto k : ks) tuple += (tuple.empty() ? "" : ",") + std::to_string(k);
      throw DomainError("specialization at (" + tuple + ") collapsed to zero");
    }
    values.push_back(mahler_jensen(q).value);
  }
  MahlerValue v;
  v.value = values.back();
  v.log_value = std::log(v.value);
  v.method = MeasureMethod::boyd_lawton;
  const std::size_t first = values.size() >= 3 ? values.size() - 3 : 0;
  for (std::size_t i = first; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      v.error_estimate = std::max(v.error_estimate, std::fabs(values[i] - values[j]));
  return v;
}

std::vector<SpecTuple> default_boyd_lawton_schedule(std::size_t rank) {
  std::vector<SpecTuple> out;
  if (rank < 2) return {SpecTuple{}};
  for (std::int64_t k2 : {25, 50, 100, 200}) {
    SpecTuple t{k2};
    while (t.size() + 1 < rank) t.push_back(t.back() * t.back() + 1);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace fkdet
