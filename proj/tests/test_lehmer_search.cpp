#include <doctest.h>

#include <cmath>

#include "fkdet/errors.hpp"
#include "fkdet/lehmer_search.hpp"

using namespace fkdet;

namespace {

SearchSpace finite_space(std::size_t n, std::int64_t c, std::size_t size = 1) {
  SearchSpace s;
  s.kind = SearchGroup::finite;
  s.group = make_cyclic(n);
  s.coeff_bound = c;
  s.rows = s.cols = size;
  return s;
}

SearchSpace zd_space(std::vector<std::int64_t> box, std::int64_t c) {
  SearchSpace s;
  s.kind = SearchGroup::zd;
  s.box = std::move(box);
  s.coeff_bound = c;
  return s;
}

ExactRadical root(long base, long num, long den) { return ExactRadical(base, Rational(num, den)); }

}  // namespace

TEST_SUITE("lehmer_search") {
  TEST_CASE("variant names") {
    for (auto v : {LehmerVariant::lambda, LehmerVariant::lambda_1, LehmerVariant::lambda_w,
                   LehmerVariant::lambda_w_1})
      CHECK(parse_lehmer_variant(to_string(v)) == v);
    CHECK(parse_lehmer_variant("Lw1") == LehmerVariant::lambda_w_1);
    CHECK(is_weak(LehmerVariant::lambda_w));
    CHECK_FALSE(is_weak(LehmerVariant::lambda_1));
    CHECK(is_single_element(LehmerVariant::lambda_1));
    CHECK_THROWS(parse_lehmer_variant("Lambda_2"));
  }

  TEST_CASE("trivial group, C = 3") {
    const ScanReport r = scan(finite_space(1, 3), LehmerVariant::lambda_w_1);
    REQUIRE(r.infimum);
    CHECK(r.infimum->exact == root(2, 1, 1));
    CHECK(r.witness == "2");
    CHECK_FALSE(r.budget_exceeded);
  }

  TEST_CASE("Z/2, C = 2") {
    const ScanReport r = scan(finite_space(2, 2), LehmerVariant::lambda_w_1);
    REQUIRE(r.infimum);
    CHECK(r.infimum->exact == root(3, 1, 2));
    CHECK(r.witness == "2 + t");
    // Non-weak variant admits t + 1 with determinant sqrt 2.
    const ScanReport s = scan(finite_space(2, 2), LehmerVariant::lambda_1);
    REQUIRE(s.infimum);
    CHECK(s.infimum->exact == root(2, 1, 2));
  }

  TEST_CASE("trivial group 2x2 matrices reach sqrt 2") {
    const ScanReport r = scan(finite_space(1, 1, 2), LehmerVariant::lambda);
    REQUIRE(r.infimum);
    CHECK(r.infimum->exact == root(2, 1, 2));
    const ScanReport w = scan(finite_space(1, 1, 2), LehmerVariant::lambda_w);
    REQUIRE(w.infimum);
    CHECK(w.infimum->exact == root(2, 1, 1));
  }

  TEST_CASE("odd cyclic groups") {
    for (std::size_t n : {3, 5}) {
      const ScanReport r = scan(finite_space(n, 1), LehmerVariant::lambda_w_1);
      REQUIRE(r.infimum);
      CHECK(r.infimum->exact == root(2, 1, static_cast<long>(n)));
    }
  }

  TEST_CASE("Lehmer's polynomial over Z") {
    const ScanReport r = scan(zd_space({10}, 1), LehmerVariant::lambda_1);
    REQUIRE(r.infimum);
    CHECK(std::fabs(r.infimum->value - 1.17628) < 5e-6);
    CHECK(r.witness == "1 + z - z^3 - z^4 - z^5 - z^6 - z^7 + z^9 + z^10");
    CHECK(r.count_enumerated == 177147);
  }

  TEST_CASE("weak and plain scans agree over Z^d") {
    for (const auto& box : {std::vector<std::int64_t>{4}, std::vector<std::int64_t>{1, 1}}) {
      const ScanReport a = scan(zd_space(box, 1), LehmerVariant::lambda_1);
      const ScanReport b = scan(zd_space(box, 1), LehmerVariant::lambda_w_1);
      REQUIRE(a.infimum);
      REQUIRE(b.infimum);
      CHECK(a.infimum->value == b.infimum->value);
      CHECK(a.witness == b.witness);
      CHECK(a.count_examined == b.count_examined);
      CHECK(a.count_det_one == b.count_det_one);
      CHECK(b.count_non_injective == 0);
    }
  }

  TEST_CASE("subgroup monotonicity") {
    const ScanReport z = scan(zd_space({2}, 1), LehmerVariant::lambda_1);
    const ScanReport z2 = scan(zd_space({2, 1}, 1), LehmerVariant::lambda_1);
    REQUIRE(z.infimum);
    REQUIRE(z2.infimum);
    CHECK(z2.infimum->value <= z.infimum->value + 1e-9);
  }

  TEST_CASE("witnesses re-evaluate and exceed 1") {
    ScanOptions o;
    o.collect_survey = true;
    for (const SearchSpace& s : {finite_space(2, 2), finite_space(3, 1), zd_space({6}, 1)}) {
      const ScanReport r = scan(s, LehmerVariant::lambda_1, o);
      REQUIRE(r.infimum);
      CHECK(r.infimum->value > 1 + r.one_threshold);
      CHECK(std::fabs(evaluate_witness(s, r.witness, o).value - r.infimum->value) < 1e-9);
      for (const SurveyEntry& e : r.survey) {
        CHECK(e.value >= 1 - 1e-9);
        CHECK(e.value <= o.survey_max);
      }
    }
  }

  TEST_CASE("determinism") {
    const ScanReport a = scan(finite_space(3, 2), LehmerVariant::lambda_1);
    const ScanReport b = scan(finite_space(3, 2), LehmerVariant::lambda_1);
    CHECK(a.witness == b.witness);
    CHECK(a.count_examined == b.count_examined);
    CHECK(a.infimum->exact == b.infimum->exact);
  }

  TEST_CASE("budget") {
    SearchSpace s = zd_space({10}, 1);
    s.budget = 100;
    const ScanReport r = scan(s, LehmerVariant::lambda_1);
    CHECK(r.budget_exceeded);
    CHECK(r.count_examined <= 100);
  }

  TEST_CASE("invalid spaces") {
    CHECK_THROWS_AS(scan(finite_space(2, 1, 2), LehmerVariant::lambda_1), DomainError);
    CHECK_THROWS_AS(scan(finite_space(2, 0), LehmerVariant::lambda), DomainError);
    CHECK_THROWS_AS(scan(zd_space({}, 1), LehmerVariant::lambda), DomainError);
  }

  TEST_CASE("known constants") {
    const auto trivial = exact_constants(*make_cyclic(1));
    REQUIRE(trivial.size() == 4);
    CHECK(trivial[0].name == "Lambda");
    CHECK(trivial[0].exact);
    CHECK(trivial[0].lower == root(2, 1, 2));
    for (std::size_t k = 1; k < 4; ++k) CHECK(trivial[k].lower == root(2, 1, 1));

    const auto z2 = exact_constants(*make_cyclic(2));
    CHECK(z2[0].lower == root(2, 1, 4));
    CHECK(z2[0].upper == root(2, 1, 2));
    CHECK_FALSE(z2[0].exact);
    CHECK(z2[1].exact);
    CHECK(z2[1].lower == root(2, 1, 2));
    CHECK(z2[2].lower == root(3, 1, 2));
    CHECK(z2[3].lower == root(3, 1, 2));

    const auto z5 = exact_constants(*make_cyclic(5));
    CHECK(z5[2].name == "Lambda^w");
    CHECK(z5[2].exact);
    CHECK(z5[2].lower == root(2, 1, 5));
    CHECK(z5[0].upper == root(4, 1, 5));

    const std::vector<std::size_t> m{2, 2};
    const auto k4 = exact_constants(*make_abelian(m));
    CHECK_FALSE(k4[2].exact);
    CHECK(k4[2].lower == root(2, 1, 4));
    CHECK(k4[2].upper == root(3, 1, 4));
  }

  TEST_CASE("torsion bound") {
    CHECK(torsion_bound_check(3) == root(2, 1, 3));
    CHECK(torsion_bound_check(3).value() == doctest::Approx(1.2599).epsilon(1e-4));
    CHECK(torsion_bound_check(10).value() == doctest::Approx(1.2457).epsilon(1e-4));
    // (m - 1)^(1/m) peaks at m = 5 and decreases from there.
    CHECK(torsion_bound_check(4).value() > torsion_bound_check(3).value());
    CHECK(torsion_bound_check(5).value() > torsion_bound_check(4).value());
    double prev = torsion_bound_check(5).value();
    for (std::int64_t m = 6; m <= 1000; ++m) {
      const double v = torsion_bound_check(m).value();
      CHECK(v < prev);
      CHECK(v > 1);
      prev = v;
    }
    CHECK_THROWS_AS(torsion_bound_check(2), DomainError);
  }
}
