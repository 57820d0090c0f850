#include "fkdet/lehmer_search.hpp"

#include <algorithm>
#include <cmath>

#include "fkdet/errors.hpp"
#include "fkdet/mahler.hpp"
#include "fkdet/parallel.hpp"

namespace fkdet {

std::string to_string(LehmerVariant v) {
  switch (v) {
    case LehmerVariant::lambda: return "Lambda";
    case LehmerVariant::lambda_1: return "Lambda_1";
    case LehmerVariant::lambda_w: return "Lambda^w";
    case LehmerVariant::lambda_w_1: return "Lambda^w_1";
  }
  return "?";
}

LehmerVariant parse_lehmer_variant(std::string_view name) {
  for (auto v : {LehmerVariant::lambda, LehmerVariant::lambda_1, LehmerVariant::lambda_w,
                 LehmerVariant::lambda_w_1}) {
    if (name == to_string(v)) return v;
  }
  if (name == "L") return LehmerVariant::lambda;
  if (name == "L1") return LehmerVariant::lambda_1;
  if (name == "Lw") return LehmerVariant::lambda_w;
  if (name == "Lw1") return LehmerVariant::lambda_w_1;
  throw std::invalid_argument("unknown Lehmer variant '" + std::string(name) + "'");
}

bool is_weak(LehmerVariant v) {
  return v == LehmerVariant::lambda_w || v == LehmerVariant::lambda_w_1;
}

bool is_single_element(LehmerVariant v) {
  return v == LehmerVariant::lambda_1 || v == LehmerVariant::lambda_w_1;
}

std::string SearchSpace::description() const {
  std::string g;
  if (kind == SearchGroup::finite) {
    g = group ? group->description() : "?";
  } else {
    g = "Z^" + std::to_string(box.size()) + " box (";
    for (std::size_t i = 0; i < box.size(); ++i) g += (i ? "," : "") + std::to_string(box[i]);
    g += ")";
  }
  return g + ", " + std::to_string(rows) + "x" + std::to_string(cols) +
         ", C = " + std::to_string(coeff_bound);
}

namespace {

using Coeffs = std::vector<std::int64_t>;

struct Layout {
  std::size_t positions = 0;  // coefficients per matrix entry
  std::size_t length = 0;     // total coefficients
  std::vector<std::int64_t> extent;  // Z^d: box[i] + 1
};

Layout layout_of(const SearchSpace& s) {
  Layout l;
  if (s.kind == SearchGroup::finite) {
    l.positions = s.group->order();
  } else {
    l.positions = 1;
    for (std::int64_t b : s.box) {
      l.extent.push_back(b + 1);
      l.positions *= static_cast<std::size_t>(b + 1);
    }
  }
  l.length = l.positions * s.rows * s.cols;
  return l;
}

// Mixed-radix exponent vector of a Z^d position; axis 0 varies fastest.
ExponentVector exponents_of(const Layout& l, std::size_t pos) {
  ExponentVector e(l.extent.size());
  for (std::size_t i = 0; i < l.extent.size(); ++i) {
    e[i] = static_cast<std::int64_t>(pos % static_cast<std::size_t>(l.extent[i]));
    pos /= static_cast<std::size_t>(l.extent[i]);
  }
  return e;
}

std::size_t position_of(const Layout& l, const ExponentVector& e) {
  std::size_t pos = 0;
  for (std::size_t i = l.extent.size(); i-- > 0;) {
    pos = pos * static_cast<std::size_t>(l.extent[i]) + static_cast<std::size_t>(e[i]);
  }
  return pos;
}

GroupRingMatrix to_finite_matrix(const SearchSpace& s, const Layout& l, const Coeffs& c) {
  GroupRingMatrix m(s.group, s.rows, s.cols);
  for (std::size_t i = 0; i < s.rows; ++i)
    for (std::size_t j = 0; j < s.cols; ++j)
      for (std::size_t g = 0; g < l.positions; ++g)
        m(i, j)[g] = Rational(c[(i * s.cols + j) * l.positions + g]);
  return m;
}

LaurentMatrix to_laurent_matrix(const SearchSpace& s, const Layout& l, const Coeffs& c) {
  LaurentMatrix m(s.box.size(), s.rows, s.cols);
  for (std::size_t i = 0; i < s.rows; ++i)
    for (std::size_t j = 0; j < s.cols; ++j)
      for (std::size_t p = 0; p < l.positions; ++p) {
        const std::int64_t x = c[(i * s.cols + j) * l.positions + p];
        if (x != 0) m(i, j).add_term(exponents_of(l, p), Rational(x));
      }
  return m;
}

Coeffs negated(Coeffs c) {
  for (auto& x : c) x = -x;
  return c;
}

// Z^d: true when the support touches every coordinate hyperplane.
bool at_origin(const Layout& l, const Coeffs& c) {
  const std::size_t d = l.extent.size();
  std::vector<bool> touches(d, false);
  bool any = false;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    any = true;
    const ExponentVector e = exponents_of(l, k % l.positions);
    for (std::size_t i = 0; i < d; ++i) touches[i] = touches[i] || e[i] == 0;
  }
  return !any || std::all_of(touches.begin(), touches.end(), [](bool b) { return b; });
}

// Adjoint of a single Z^d element, reflected back into the box.
Coeffs zd_adjoint(const Layout& l, const Coeffs& c) {
  const std::size_t d = l.extent.size();
  ExponentVector hi(d, 0);
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] == 0) continue;
    const ExponentVector e = exponents_of(l, p);
    for (std::size_t i = 0; i < d; ++i) hi[i] = std::max(hi[i], e[i]);
  }
  Coeffs out(c.size(), 0);
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (c[p] == 0) continue;
    ExponentVector e = exponents_of(l, p);
    for (std::size_t i = 0; i < d; ++i) e[i] = hi[i] - e[i];
    out[position_of(l, e)] = c[p];
  }
  return out;
}

// Orbit representatives are the lexicographically greatest members.
bool is_representative(const SearchSpace& s, const Layout& l, const Coeffs& c) {
  auto beats = [&](const Coeffs& other) { return other > c; };
  // Zero has determinant 1 in every variant and never witnesses anything.
  if (std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; })) return false;
  if (beats(negated(c))) return false;
  const bool single = s.rows == 1 && s.cols == 1;
  if (s.kind == SearchGroup::zd) {
    if (!at_origin(l, c)) return false;
    if (single) {
      const Coeffs a = zd_adjoint(l, c);
      if (beats(a) || beats(negated(a))) return false;
    }
    return true;
  }
  if (!single) return true;
  const FiniteGroup& g = *s.group;
  const std::size_t n = g.order();
  Coeffs adj(n);
  for (std::size_t h = 0; h < n; ++h) adj[g.inverse(h)] = c[h];
  Coeffs img(n);
  for (const Coeffs* base : std::initializer_list<const Coeffs*>{&c, &adj}) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t h = 0; h < n; ++h) img[g.multiply(x, h)] = (*base)[h];
      if (beats(img) || beats(negated(img))) return false;
    }
  }
  return true;
}

std::string witness_string(const SearchSpace& s, const Layout& l, const Coeffs& c) {
  if (s.kind == SearchGroup::finite) {
    const GroupRingMatrix m = to_finite_matrix(s, l, c);
    return s.rows == 1 && s.cols == 1 ? m(0, 0).to_string() : m.to_string();
  }
  const LaurentMatrix m = to_laurent_matrix(s, l, c);
  return s.rows == 1 && s.cols == 1 ? m(0, 0).to_string() : m.to_string();
}

struct Outcome {
  enum Kind { non_injective, det_one, above_one } kind;
  FKValue value;
};

MahlerValue zd_element_measure(const LaurentPolynomial& p, const ZdOptions& options) {
  if (p.rank() == 1) return mahler_jensen(p);
  // Polynomials in a single variable reduce to Jensen exactly.
  std::size_t used_axes = 0, axis = 0;
  for (std::size_t i = 0; i < p.rank(); ++i) {
    if (support_bound(p, i) > 0) {
      ++used_axes;
      axis = i;
    }
  }
  if (used_axes <= 1) {
    LaurentPolynomial q(1);
    for (const auto& [e, c] : p.terms()) q.add_term({e[axis]}, c);
    return mahler_jensen(q);
  }
  if (options.method == MeasureMethod::quadrature) return log_mahler_quadrature(p, options.grid);
  PipelineTrace t;
  t.det_d1 = p;
  t.det_d2 = LaurentPolynomial::constant(p.rank(), 1);
  return mahler_boyd_lawton(p, build_schedule(t, options.schedule_count, options.min_k2).tuples);
}

Outcome evaluate_candidate(const SearchSpace& s, const Layout& l, const Coeffs& c,
                           bool weak, const ScanOptions& options) {
  Outcome out{Outcome::det_one, FKValue{}};
  if (s.kind == SearchGroup::finite) {
    const GroupRingMatrix m = to_finite_matrix(s, l, c);
    if (weak && matrix_rank(regular_rep(m)) != s.rows * s.group->order()) {
      out.kind = Outcome::non_injective;
      return out;
    }
    out.value = fk_det_finite(m);
  } else if (s.rows == 1 && s.cols == 1) {
    const LaurentMatrix m = to_laurent_matrix(s, l, c);
    const LaurentPolynomial& p = m(0, 0);
    if (p.rank() == 1) {
      std::vector<double> dense(l.positions);
      for (std::size_t k = 0; k < l.positions; ++k) dense[k] = static_cast<double>(c[k]);
      if (has_unit_measure(dense)) return out;
    }
    const MahlerValue mv = zd_element_measure(p, options.zd);
    out.value.value = mv.value;
    out.value.log_value = mv.log_value;
    out.value.error_estimate = mv.error_estimate;
    out.value.method = to_string(mv.method);
  } else {
    const LaurentMatrix m = to_laurent_matrix(s, l, c);
    if (weak && vn_dim_kernel_zd(m) != 0) {
      out.kind = Outcome::non_injective;
      return out;
    }
    out.value = fk_det_zd(m, options.zd).value;
  }
  out.kind = out.value.value < 1 + options.one_threshold ? Outcome::det_one : Outcome::above_one;
  return out;
}

void check_space(const SearchSpace& s, LehmerVariant variant) {
  if (s.rows == 0 || s.cols == 0) throw DomainError("matrix size must be positive");
  if (s.coeff_bound < 1) throw DomainError("coefficient bound must be >= 1");
  if (is_single_element(variant) && (s.rows != 1 || s.cols != 1)) {
    throw DomainError(to_string(variant) + " ranges over 1x1 matrices only");
  }
  if (s.kind == SearchGroup::finite && !s.group) throw DomainError("search space has no group");
  if (s.kind == SearchGroup::zd) {
    if (s.box.empty()) throw DomainError("Z^d search needs an exponent box");
    for (auto b : s.box)
      if (b < 0) throw DomainError("exponent box entries must be >= 0");
  }
}

}  // namespace

ScanReport scan(const SearchSpace& space, LehmerVariant variant, const ScanOptions& options) {
  check_space(space, variant);
  const Layout l = layout_of(space);
  const bool weak = is_weak(variant);
  const std::int64_t bound = space.coeff_bound;

  ScanReport report;
  report.space = space;
  report.variant = variant;
  report.one_threshold = options.one_threshold;

  // Descending lexicographic odometer starting at (C, ..., C).
  Coeffs current(l.length, bound);
  bool exhausted = false;
  auto advance = [&] {
    for (std::size_t k = l.length; k-- > 0;) {
      if (current[k] > -bound) {
        --current[k];
        return;
      }
      current[k] = bound;
    }
    exhausted = true;
  };

  constexpr std::size_t kBlock = 4096;
  std::vector<Coeffs> block;
  std::vector<Outcome> outcomes;
  double best_log = 0;
  while (!exhausted && !report.budget_exceeded) {
    block.clear();
    while (!exhausted && block.size() < kBlock) {
      ++report.count_enumerated;
      const bool ok =
          (space.support_limit == 0 ||
           static_cast<std::size_t>(std::count_if(current.begin(), current.end(),
                                                  [](auto x) { return x != 0; })) <=
               space.support_limit) &&
          is_representative(space, l, current);
      if (ok) {
        if (report.count_examined + block.size() >= space.budget) {
          report.budget_exceeded = true;
          break;
        }
        block.push_back(current);
      }
      advance();
    }
    outcomes.assign(block.size(), Outcome{});
    parallel_for(block.size(), [&](std::size_t k) {
      outcomes[k] = evaluate_candidate(space, l, block[k], weak, options);
    });
    // Sequential reduction in enumeration order; near-ties keep the earlier witness.
    for (std::size_t k = 0; k < block.size(); ++k) {
      ++report.count_examined;
      const Outcome& o = outcomes[k];
      if (o.kind == Outcome::non_injective) {
        ++report.count_non_injective;
        continue;
      }
      if (o.kind == Outcome::det_one) {
        ++report.count_det_one;
        continue;
      }
      if (options.collect_survey && o.value.value <= options.survey_max) {
        report.survey.push_back({witness_string(space, l, block[k]), o.value.value});
      }
      if (!report.infimum || o.value.log_value < best_log - 1e-12 * std::max(1.0, best_log)) {
        report.infimum = o.value;
        best_log = o.value.log_value;
        report.witness = witness_string(space, l, block[k]);
      }
    }
  }
  return report;
}

namespace {

std::vector<std::vector<std::string>> split_matrix(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::string t = text;
  const auto open = t.find('[');
  if (open == std::string::npos) return {{t}};
  std::size_t pos = open + 1;
  while (true) {
    const auto row_open = t.find('[', pos);
    if (row_open == std::string::npos) break;
    const auto row_close = t.find(']', row_open);
    if (row_close == std::string::npos) throw ParseError("unterminated matrix row", row_open);
    std::vector<std::string> row;
    std::string cell;
    for (std::size_t k = row_open + 1; k < row_close; ++k) {
      if (t[k] == ',') {
        row.push_back(cell);
        cell.clear();
      } else {
        cell += t[k];
      }
    }
    row.push_back(cell);
    rows.push_back(row);
    pos = row_close + 1;
  }
  return rows;
}

}  // namespace

FKValue evaluate_witness(const SearchSpace& space, const std::string& witness,
                         const ScanOptions& options) {
  const auto cells = split_matrix(witness);
  if (cells.size() != space.rows || cells.front().size() != space.cols) {
    throw DomainError("witness shape does not match the search space");
  }
  if (space.kind == SearchGroup::finite) {
    std::vector<std::vector<GroupRingElement>> rows;
    for (const auto& r : cells) {
      rows.emplace_back();
      for (const auto& c : r) rows.back().push_back(parse_group_element(c, space.group));
    }
    return fk_det_finite(GroupRingMatrix::from_rows(space.group, rows));
  }
  const std::size_t d = space.box.size();
  std::vector<std::vector<LaurentPolynomial>> rows;
  for (const auto& r : cells) {
    rows.emplace_back();
    for (const auto& c : r) rows.back().push_back(parse_polynomial(c, d));
  }
  const LaurentMatrix m = LaurentMatrix::from_rows(d, rows);
  if (space.rows == 1 && space.cols == 1) {
    const MahlerValue mv = zd_element_measure(m(0, 0), options.zd);
    FKValue v;
    v.value = mv.value;
    v.log_value = mv.log_value;
    v.error_estimate = mv.error_estimate;
    v.method = to_string(mv.method);
    return v;
  }
  return fk_det_zd(m, options.zd).value;
}

std::vector<ConstantEntry> exact_constants(const FiniteGroup& g) {
  const long n = static_cast<long>(g.order());
  auto exact = [](std::string name, ExactRadical v) {
    return ConstantEntry{std::move(name), true, v, v};
  };
  auto bounds = [](std::string name, ExactRadical lo, ExactRadical hi) {
    return ConstantEntry{std::move(name), lo == hi, lo, hi};
  };
  const ExactRadical sqrt2(2, Rational(1, 2));
  if (n == 1) {
    return {exact("Lambda", sqrt2), exact("Lambda_1", ExactRadical(2, 1)),
            exact("Lambda^w", ExactRadical(2, 1)), exact("Lambda^w_1", ExactRadical(2, 1))};
  }
  if (n == 2) {
    const ExactRadical sqrt3(3, Rational(1, 2));
    return {bounds("Lambda", ExactRadical(2, Rational(1, 4)), sqrt2), exact("Lambda_1", sqrt2),
            exact("Lambda^w", sqrt3), exact("Lambda^w_1", sqrt3)};
  }
  const ExactRadical upper(Rational(n - 1), Rational(1, n));
  // Lambda <= Lambda_1 and Lambda^w <= Lambda^w_1; N_G - e bounds all four from above.
  const ExactRadical strong_lower(2, Rational(1, 2 * n));
  const ExactRadical weak_lower(2, Rational(1, n));
  std::vector<ConstantEntry> out;
  out.push_back(bounds("Lambda", strong_lower, upper));
  out.push_back(bounds("Lambda_1", strong_lower, upper));
  const bool odd_cyclic = g.abelian_moduli().size() == 1 && n % 2 == 1;
  if (odd_cyclic) {
    out.push_back(exact("Lambda^w", weak_lower));
    out.push_back(exact("Lambda^w_1", weak_lower));
  } else {
    out.push_back(bounds("Lambda^w", weak_lower, upper));
    out.push_back(bounds("Lambda^w_1", weak_lower, upper));
  }
  return out;
}

ExactRadical torsion_bound_check(std::int64_t m) {
  if (m < 3) throw DomainError("torsion bound needs m >= 3");
  return ExactRadical(Rational(static_cast<long>(m - 1)), Rational(1, static_cast<long>(m)));
}

}  // namespace fkdet
