#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fkdet/errors.hpp"
#include "fkdet/fk_zd.hpp"
#include "test_support.hpp"

using namespace fkdet;
using fkdet::testing::random_matrix;
using fkdet::testing::random_poly;
using fkdet::testing::rel_close;
using fkdet::testing::Rng;

namespace {

LaurentPolynomial P(const char* text, std::size_t rank = 0) { return parse_polynomial(text, rank); }

LaurentMatrix M(std::size_t rank, std::vector<std::vector<const char*>> rows) {
  std::vector<std::vector<LaurentPolynomial>> out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (const char* x : r) out.back().push_back(parse_polynomial(x, rank));
  }
  return LaurentMatrix::from_rows(rank, out);
}

}  // namespace

TEST_SUITE("fk_zd") {
  TEST_CASE("kernel dimensions") {
    CHECK(vn_dim_kernel_zd(M(1, {{"z - 1"}})) == 0);
    CHECK(vn_dim_kernel_zd(M(1, {{"z - 1"}, {"z^2 - 1"}})) == 1);
    CHECK(vn_dim_kernel_zd(LaurentMatrix(1, 2, 3)) == 2);
  }

  TEST_CASE("pipeline values") {
    const PipelineTrace t = fk_det_zd(M(1, {{"z - 2"}}));
    CHECK(t.q == 0);
    CHECK(t.d2.rows() == 0);
    CHECK(t.det_d1 == P("z^-1 - 2") * P("z - 2"));
    CHECK(t.value.value == doctest::Approx(2).epsilon(1e-12));

    // For a 2x1 column the value is sqrt(M(A^* A)).
    const auto a = M(1, {{"z - 1"}, {"z - 2"}});
    const PipelineTrace u = fk_det_zd(a);
    CHECK(u.q == 1);
    const auto direct = P("z - 1") * P("z^-1 - 1") + P("z - 2") * P("z^-1 - 2");
    CHECK(u.value.value ==
          doctest::Approx(std::sqrt(mahler_jensen(direct).value)).epsilon(1e-10));

    // Square matrix with commutative determinant z^2 - z - 1.
    const auto g = M(1, {{"z", "1"}, {"1", "z - 1"}});
    REQUIRE(determinant(g) == P("z^2 - z - 1"));
    CHECK(fk_det_zd(g).value.value == doctest::Approx(std::numbers::phi).epsilon(1e-10));
  }

  TEST_CASE("trace invariants") {
    Rng rng(41);
    for (int k = 0; k < 20; ++k) {
      auto a = random_matrix(rng, 1, 3, 2, -1, 2, 2, 3);
      for (std::size_t j = 0; j < 2; ++j) a(2, j) = a(0, j) + a(1, j) * P("z");
      const PipelineTrace t = reduce(a);
      CHECK((t.b * t.a).is_zero());
      CHECK(t.d1 == adjoint(t.b) * t.b + t.a * adjoint(t.a));
      CHECK(t.d2 == t.b * adjoint(t.b));
      CHECK_FALSE(t.det_d1.is_zero());
      CHECK_FALSE(t.det_d2.is_zero());
    }
  }

  TEST_CASE("bad kernel bases are reported") {
    const auto a = M(1, {{"z"}, {"1"}});
    CHECK_THROWS_AS(reduce_with_kernel(a, M(1, {{"1", "1"}})), InternalError);
  }

  TEST_CASE("pipeline against Jensen on square matrices") {
    Rng rng(42);
    int checked = 0;
    while (checked < 30) {
      const std::size_t n = 2 + checked % 2;
      const auto a = random_matrix(rng, 1, n, n, 0, 2, 2, 3);
      const auto det = determinant(a);
      if (det.is_zero()) continue;
      ++checked;
      CHECK(rel_close(fk_det_zd(a).value.value, mahler_jensen(det).value, 1e-8));
      CHECK(vn_dim_kernel_zd(a) == 0);
    }
  }

  TEST_CASE("kernel normalization does not matter") {
    Rng rng(43);
    for (int k = 0; k < 10; ++k) {
      auto a = random_matrix(rng, 1, 3, 2, 0, 2, 2, 3);
      const auto u = random_poly(rng, 1, 0, 1, 2, 2);
      for (std::size_t j = 0; j < 2; ++j) a(2, j) = u * a(0, j) - a(1, j);
      auto x = reduce(a, KernelNormalization::canonical);
      auto y = reduce(a, KernelNormalization::raw);
      evaluate(x);
      evaluate(y);
      CHECK(rel_close(x.value.value, y.value.value, 1e-8));
    }
  }

  TEST_CASE("adjoint symmetry") {
    Rng rng(44);
    for (int k = 0; k < 15; ++k) {
      const auto a = random_matrix(rng, 1, 2, 2, -1, 1, 2, 3);
      if (determinant(a).is_zero()) continue;
      CHECK(rel_close(fk_det_zd(a).value.value, fk_det_zd(adjoint(a)).value.value, 1e-8));
    }
  }

  TEST_CASE("embedding into higher rank") {
    const std::vector<std::size_t> axes{0};
    for (const char* text : {"z - 2", "z^2 - z - 1", "3*z^3 + z - 1"}) {
      const auto p = P(text);
      LaurentMatrix a1(1, 1, 1), a2(2, 1, 1);
      a1(0, 0) = p;
      a2(0, 0) = embed(p, 2, axes);
      CHECK(rel_close(fk_det_zd(a1).value.value, fk_det_zd(a2).value.value, 1e-6));
    }
  }

  TEST_CASE("monomial determinants are exact") {
    const PipelineTrace t = fk_det_zd(M(2, {{"3*z1*z2", "0"}, {"0", "z2^-1"}}));
    REQUIRE(t.value.exact);
    CHECK(*t.value.exact == ExactRadical(3, 1));
  }

  TEST_CASE("specialization schedules") {
    PipelineTrace trivial;
    trivial.det_d1 = P("1", 2);
    trivial.det_d2 = P("1", 2);
    const SpecSchedule s0 = build_schedule(trivial, 3);
    CHECK(s0.b == std::vector<std::int64_t>{0, 0});
    CHECK(s0.c == std::vector<std::int64_t>{0});
    CHECK(is_admissible(s0, SpecTuple{1}));

    PipelineTrace t;
    t.det_d1 = P("z1^2*z2^3 + z1^-2*z2^-3 + 1");
    t.det_d2 = P("1", 2);
    const SpecSchedule s1 = build_schedule(t, 3);
    CHECK(s1.b == std::vector<std::int64_t>{2, 3});
    CHECK(s1.c == std::vector<std::int64_t>{4});
    CHECK(s1.tuples == std::vector<SpecTuple>{{5}, {10}, {20}});
    CHECK_FALSE(is_admissible(s1, SpecTuple{4}));

    PipelineTrace t3;
    t3.det_d1 = P("z1*z2*z3 + z1^-1 + z3^2 + 2");
    t3.det_d2 = P("z2 + 1", 3);
    const SpecSchedule s3 = build_schedule(t3, 4, 10);
    for (const SpecTuple& ks : s3.tuples) {
      CHECK(is_admissible(s3, ks));
      CHECK(ks[0] > s3.c[0]);
      CHECK(ks[1] > s3.c[1] * ks[0]);
    }

    PipelineTrace one_var;
    one_var.det_d1 = P("z - 2");
    one_var.det_d2 = P("1");
    CHECK_THROWS_AS(build_schedule(one_var, 2), DomainError);
  }

  TEST_CASE("evaluation by specialization") {
    for (const char* text : {"z1*z2", "z1 - 2"}) {
      LaurentMatrix a(2, 1, 1);
      a(0, 0) = P(text, 2);
      const SpecSchedule s = build_schedule(reduce(a), 3, 25);
      const double expected = std::string(text) == "z1*z2" ? 1 : 2;
      CHECK(fk_det_zd_via_specialization(a, s).value == doctest::Approx(expected).epsilon(1e-10));
    }
    LaurentMatrix a(2, 1, 1);
    a(0, 0) = P("1 + z1 + z2");
    SpecSchedule s = build_schedule(reduce(a), 1, 50);
    s.tuples = {{50}, {100}, {200}};
    const double quad = log_mahler_quadrature(a(0, 0), 4096).value;
    CHECK(std::fabs(fk_det_zd_via_specialization(a, s).value - quad) < 1e-2);

    // A rectangular matrix with a kernel.
    const auto r = M(2, {{"z1 - 2"}, {"z2 + 3"}});
    const auto pipeline = fk_det_zd(r, ZdOptions{MeasureMethod::quadrature, 1024});
    const SpecSchedule rs = build_schedule(reduce(r), 3, 25);
    CHECK(std::fabs(fk_det_zd_via_specialization(r, rs).value - pipeline.value.value) < 1e-2);
  }

  TEST_CASE("quadrature and Boyd-Lawton paths agree") {
    const auto a = M(2, {{"1 + z1 + z2", "1"}, {"0", "z1 - 2"}});
    const double bl = fk_det_zd(a).value.value;
    const double q = fk_det_zd(a, ZdOptions{MeasureMethod::quadrature, 2048}).value.value;
    CHECK(std::fabs(bl - q) < 1e-2 * q);
  }
}
