#include "fkdet/approx_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fkdet/errors.hpp"
#include "fkdet/parallel.hpp"

namespace fkdet {

bool QuotientChain::is_divisibility_chain() const {
  for (std::size_t s = 1; s < stages.size(); ++s)
    for (std::size_t j = 0; j < rank; ++j)
      if (stages[s][j] % stages[s - 1][j] != 0) return false;
  return true;
}

QuotientChain chain_range(std::size_t first, std::size_t last) {
  if (first == 0 || last < first) throw DomainError("chain range must satisfy 1 <= first <= last");
  QuotientChain c;
  for (std::size_t n = first; n <= last; ++n) c.stages.push_back({n});
  return c;
}

QuotientChain chain_doubling(std::size_t rank, std::size_t n, std::size_t count) {
  if (rank == 0 || n == 0) throw DomainError("chain rank and start must be positive");
  QuotientChain c{rank, {}};
  for (std::size_t k = 0; k < count; ++k, n *= 2) c.stages.push_back(Moduli(rank, n));
  return c;
}

QuotientChain chain_primes(std::size_t rank, std::size_t count) {
  if (rank == 0) throw DomainError("chain rank must be positive");
  QuotientChain c{rank, {}};
  for (std::size_t p = 2; c.stages.size() < count; ++p) {
    bool prime = true;
    for (std::size_t q = 2; q * q <= p && prime; ++q) prime = p % q != 0;
    if (prime) c.stages.push_back(Moduli(rank, p));
  }
  return c;
}

QuotientChain parse_chain(std::string_view text) {
  const std::string t(text);
  const auto dots = t.find("..");
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || v == 0) {
      throw ParseError("expected a positive integer in chain '" + t + "'", 0);
    }
    return v;
  };
  if (dots != std::string::npos) return chain_range(number(t.substr(0, dots)), number(t.substr(dots + 2)));
  QuotientChain c;
  c.rank = 0;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Moduli m;
    std::stringstream parts(item);
    std::string part;
    while (std::getline(parts, part, 'x')) m.push_back(number(part));
    if (c.rank == 0) c.rank = m.size();
    if (m.size() != c.rank) throw ParseError("chain stages have different ranks", 0);
    c.stages.push_back(m);
  }
  if (c.stages.empty()) throw ParseError("empty chain", 0);
  return c;
}

namespace {

GroupRingElement reduce_into(const LaurentPolynomial& p, const GroupPtr& g,
                             std::span<const std::size_t> moduli) {
  GroupRingElement out(g);
  for (const auto& [e, c] : p.terms()) {
    std::size_t index = 0;
    for (std::size_t k = moduli.size(); k-- > 0;) {
      const auto m = static_cast<std::int64_t>(moduli[k]);
      index = index * moduli[k] + static_cast<std::size_t>(((e[k] % m) + m) % m);
    }
    out[index] += c;
  }
  return out;
}

void check_moduli(std::size_t rank, std::span<const std::size_t> moduli) {
  if (moduli.size() != rank) throw DomainError("moduli count must equal the rank");
  for (std::size_t m : moduli)
    if (m == 0) throw DomainError("modulus must be positive");
}

}  // namespace

GroupRingElement reduce_mod(const LaurentPolynomial& p, std::span<const std::size_t> moduli) {
  check_moduli(p.rank(), moduli);
  return reduce_into(p, make_abelian(moduli), moduli);
}

GroupRingMatrix reduce_mod(const LaurentMatrix& a, std::span<const std::size_t> moduli) {
  check_moduli(a.rank(), moduli);
  const GroupPtr g = make_abelian(moduli);
  GroupRingMatrix out(g, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = reduce_into(a(i, j), g, moduli);
  return out;
}

Rational trace_element(const LaurentPolynomial& p) { return unit_coefficient(p); }

Rational matrix_trace(const LaurentMatrix& a) {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += trace_element(a(i, i));
  return t;
}

Rational matrix_trace(const GroupRingMatrix& a) {
  Rational t = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += trace_element(a(i, i));
  return t;
}

namespace {

// Trace of the reduction of P at (n, ..., n): unit coefficients of exponents divisible by n.
Rational reduced_trace(const LaurentMatrix& p, std::size_t n) {
  Rational t = 0;
  const auto m = static_cast<std::int64_t>(n);
  for (std::size_t i = 0; i < std::min(p.rows(), p.cols()); ++i)
    for (const auto& [e, c] : p(i, i).terms())
      if (std::all_of(e.begin(), e.end(), [&](std::int64_t x) { return x % m == 0; })) t += c;
  return t;
}

}  // namespace

TraceMatch trace_match_check(const LaurentMatrix& a, std::size_t degree,
                             std::span<const std::size_t> moduli) {
  if (!a.is_square()) throw DomainError("trace matching needs a square matrix");
  if (degree == 0) throw DomainError("polynomial degree must be >= 1");
  TraceMatch out;
  std::vector<LaurentMatrix> powers{a};
  for (std::size_t m = 2; m <= degree; ++m) powers.push_back(powers.back() * a);

  const GroupRingMatrix ar = reduce_mod(a, moduli);
  GroupRingMatrix pr = ar;
  out.match = true;
  for (std::size_t m = 1; m <= degree; ++m) {
    if (m > 1) pr = pr * ar;
    out.traces_zd.push_back(matrix_trace(powers[m - 1]));
    out.traces_quotient.push_back(matrix_trace(pr));
    out.match = out.match && out.traces_zd.back() == out.traces_quotient.back();
  }

  out.certified_moduli.assign(a.rank(), 1);
  std::int64_t widest = 0;
  for (const LaurentMatrix& p : powers)
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j)
        for (std::size_t axis = 0; axis < a.rank(); ++axis) {
          const auto b = static_cast<std::size_t>(2 * support_bound(p(i, j), axis) + 1);
          out.certified_moduli[axis] = std::max(out.certified_moduli[axis], b);
          widest = std::max<std::int64_t>(widest, static_cast<std::int64_t>(b));
        }
  for (std::size_t n = 1; n <= static_cast<std::size_t>(widest); ++n) {
    bool all = true;
    for (std::size_t m = 0; m < degree && all; ++m) all = reduced_trace(powers[m], n) == out.traces_zd[m];
    if (all) {
      out.least_uniform_modulus = n;
      break;
    }
  }
  return out;
}

namespace {

double bound_from(std::size_t rows, std::size_t cols, double max_l1) {
  const double m = static_cast<double>(std::max(rows, cols));
  return std::sqrt((2 * m - 1) * m) * max_l1;
}

}  // namespace

double norm_bound(const LaurentMatrix& a) {
  Rational best = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, l1_norm(a(i, j)));
  return bound_from(a.rows(), a.cols(), best.get_d());
}

double norm_bound(const GroupRingMatrix& a) {
  Rational best = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Rational l1 = 0;
      for (const Rational& c : a(i, j).coeffs()) l1 += abs(c);
      best = std::max(best, l1);
    }
  return bound_from(a.rows(), a.cols(), best.get_d());
}

namespace {

double limsup_estimate(const std::vector<StageValue>& stages) {
  const std::size_t first = stages.size() / 2;
  double tail_max = 0;
  for (std::size_t k = first; k < stages.size(); ++k) tail_max = std::max(tail_max, stages[k].value.value);
  const std::size_t n = stages.size() - first;
  if (n < 3) return tail_max;
  // ln(value) = a + b / |Q|; the intercept a is the extrapolated limit.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = first; k < stages.size(); ++k) {
    double order = 1;
    for (std::size_t m : stages[k].moduli) order *= static_cast<double>(m);
    const double x = 1 / order;
    const double y = stages[k].value.log_value;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = static_cast<double>(n) * sxx - sx * sx;
  if (std::fabs(denom) < 1e-300) return tail_max;
  const double intercept = (sy * sxx - sx * sxy) / denom;
  return std::min(tail_max, std::exp(intercept));
}

}  // namespace

DetSequence det_sequence(const LaurentMatrix& a, const QuotientChain& chain,
                         const ApproxOptions& options) {
  if (chain.stages.empty()) throw DomainError("empty quotient chain");
  if (chain.rank != a.rank()) throw DomainError("chain rank differs from the matrix rank");
  for (const Moduli& m : chain.stages) {
    std::size_t order = 1;
    for (std::size_t n : m) order *= n;
    if (order > options.max_stage_order) {
      throw BudgetError("stage group of order " + std::to_string(order) +
                        " exceeds the configured limit " + std::to_string(options.max_stage_order));
    }
  }
  DetSequence out;
  out.chain = chain;
  out.stages.resize(chain.stages.size());
  parallel_for(chain.stages.size(), [&](std::size_t k) {
    const GroupRingMatrix r = reduce_mod(a, chain.stages[k]);
    out.stages[k] = StageValue{chain.stages[k], fk_det_finite(r), vn_dim_kernel_finite(r)};
  });
  out.limit_reference = fk_det_zd(a, options.zd).value;
  const double slack = options.tolerance + out.limit_reference.error_estimate;
  out.max_stage_value = 0;
  for (const StageValue& s : out.stages) out.max_stage_value = std::max(out.max_stage_value, s.value.value);
  out.limsup_estimate = limsup_estimate(out.stages);
  out.limsup_ok = out.limsup_estimate <= out.limit_reference.value + slack;
  out.final_gap = std::fabs(out.stages.back().value.value - out.limit_reference.value);
  out.convergence = out.final_gap <= options.convergence_tolerance ? "evidence of convergence"
                                                                   : "no evidence of convergence";
  return out;
}

std::string to_csv(const DetSequence& s) {
  std::string out = "moduli,value\n";
  char buf[64];
  for (const StageValue& st : s.stages) {
    std::string m;
    for (std::size_t k = 0; k < st.moduli.size(); ++k) m += (k ? "x" : "") + std::to_string(st.moduli[k]);
    std::snprintf(buf, sizeof buf, "%.17g", st.value.value);
    out += m + "," + buf + "\n";
  }
  return out;
}

}  // namespace fkdet
