#include <doctest.h>

#include <cmath>
#include <complex>

#include "fkdet/errors.hpp"
#include "fkdet/mahler.hpp"
#include "test_support.hpp"

using namespace fkdet;
using fkdet::testing::random_dense;
using fkdet::testing::Rng;
using fkdet::testing::uniform;

namespace {

LaurentPolynomial P(const char* text, std::size_t rank = 0) { return parse_polynomial(text, rank); }

const char* kLehmer = "z^10 + z^9 - z^7 - z^6 - z^5 - z^4 - z^3 + z + 1";

std::size_t count_outside(const RootList& r) {
  std::size_t n = 0;
  for (const auto& z : r.roots) n += std::abs(z) > 1 + kUnitCircleTolerance;
  return n;
}

}  // namespace

TEST_SUITE("mahler") {
  TEST_CASE("roots of small polynomials") {
    const RootList a = roots_one_var(P("z^2 - 1"));
    CHECK(a.leading_magnitude == doctest::Approx(1));
    REQUIRE(a.roots.size() == 2);
    double lo = std::min(a.roots[0].real(), a.roots[1].real());
    double hi = std::max(a.roots[0].real(), a.roots[1].real());
    CHECK(lo == doctest::Approx(-1));
    CHECK(hi == doctest::Approx(1));

    const RootList b = roots_one_var(P("2*z - 4"));
    CHECK(b.leading_magnitude == doctest::Approx(2));
    REQUIRE(b.roots.size() == 1);
    CHECK(b.roots[0].real() == doctest::Approx(2));

    const RootList l = roots_one_var(P(kLehmer));
    CHECK(l.roots.size() == 10);
    CHECK(count_outside(l) == 1);
  }

  TEST_CASE("root list reconstructs the polynomial on the circle") {
    Rng rng(21);
    for (int k = 0; k < 30; ++k) {
      const auto p = random_dense(rng, 2 + k % 9, 5);
      if (p.is_zero()) continue;
      const RootList r = roots_one_var(p);
      for (double theta : {0.3, 1.7, 4.1}) {
        const std::complex<double> z = std::polar(1.0, theta);
        std::complex<double> direct = 0;
        for (const auto& [e, c] : p.terms()) direct += c.get_d() * std::pow(z, static_cast<int>(e[0]));
        std::complex<double> product = r.leading_magnitude;
        for (const auto& a : r.roots) product *= z - a;
        CHECK(std::abs(product) == doctest::Approx(std::abs(direct)).epsilon(1e-7));
      }
    }
  }

  TEST_CASE("companion and Aberth agree") {
    Rng rng(22);
    for (int k = 0; k < 20; ++k) {
      std::vector<double> c(12);
      for (auto& x : c) x = static_cast<double>(uniform(rng, -4, 4));
      c.back() = 1;
      c.front() = 2;
      double mc = 1, ma = 1;
      for (const auto& z : companion_roots(c)) mc *= std::max(1.0, std::abs(z));
      for (const auto& z : aberth_roots(c)) ma *= std::max(1.0, std::abs(z));
      CHECK(mc == doctest::Approx(ma).epsilon(1e-9));
    }
  }

  TEST_CASE("Jensen values") {
    CHECK(mahler_jensen(P("z - 2")).value == doctest::Approx(2).epsilon(1e-14));
    CHECK(std::fabs(mahler_jensen(P(kLehmer)).value - 1.17628) < 5e-6);
    CHECK(mahler_jensen(P("z^2 + z + 1")).value == doctest::Approx(1).epsilon(1e-14));
    CHECK(mahler_jensen(P("3")).value == doctest::Approx(3));
    CHECK_THROWS_AS(mahler_jensen(P("0")), DomainError);
    CHECK_THROWS_AS(mahler_jensen(P("z1 + z2")), DomainError);
  }

  TEST_CASE("value and log value agree") {
    Rng rng(23);
    for (int k = 0; k < 50; ++k) {
      const auto p = random_dense(rng, 1 + k % 8, 4);
      if (p.is_zero()) continue;
      const MahlerValue v = mahler_jensen(p);
      CHECK(v.value == doctest::Approx(std::exp(v.log_value)).epsilon(1e-14));
      CHECK(v.value >= 1 - v.error_estimate - 1e-9);
    }
  }

  TEST_CASE("multiplicativity, shifts, scaling and adjoint") {
    Rng rng(24);
    for (int k = 0; k < 60; ++k) {
      const auto p = random_dense(rng, 1 + k % 6, 4);
      const auto q = random_dense(rng, 1 + k % 5, 4);
      if (p.is_zero() || q.is_zero()) continue;
      const double mp = mahler_jensen(p).log_value;
      const double mq = mahler_jensen(q).log_value;
      CHECK(mahler_jensen(p * q).log_value == doctest::Approx(mp + mq).epsilon(1e-7));
      CHECK(mahler_jensen(p.shifted({k % 5 - 2})).log_value == doctest::Approx(mp).epsilon(1e-10));
      const std::int64_t u = 2 + k % 3;
      CHECK(mahler_jensen(p * Rational(-u)).log_value ==
            doctest::Approx(mp + std::log(double(u))).epsilon(1e-10));
      CHECK(mahler_jensen(adjoint(p)).log_value == doctest::Approx(mp).epsilon(1e-9));
    }
  }

  TEST_CASE("unit measure pretest") {
    const std::vector<double> cyclo{1, 1, 1};
    const std::vector<double> lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
    const std::vector<double> two{-2, 1};
    CHECK(has_unit_measure(cyclo));
    CHECK_FALSE(has_unit_measure(lehmer));
    CHECK_FALSE(has_unit_measure(two));
  }

  TEST_CASE("quadrature") {
    CHECK(log_mahler_quadrature(P("2"), 16).value == doctest::Approx(2));
    CHECK(std::fabs(log_mahler_quadrature(P("z - 2"), 1024).value - 2) < 1e-3);
    const double a = log_mahler_quadrature(P("1 + z1 + z2"), 2048).value;
    const double b = log_mahler_quadrature(P("1 + z1 + z2"), 4096).value;
    CHECK(std::fabs(a - b) < 1e-3);
  }

  TEST_CASE("Jensen against quadrature") {
    Rng rng(25);
    for (int k = 0; k < 100; ++k) {
      const auto p = random_dense(rng, 1 + k % 12, 5);
      if (p.is_zero()) continue;
      const double j = mahler_jensen(p).value;
      const double q = log_mahler_quadrature(p, 4096).value;
      CHECK(std::fabs(j - q) <= 1e-3 * std::max(1.0, j));
    }
  }

  TEST_CASE("Boyd-Lawton") {
    const auto schedule = default_boyd_lawton_schedule(2);
    REQUIRE(schedule.size() == 4);
    CHECK(schedule.front() == SpecTuple{25});
    CHECK(schedule.back() == SpecTuple{200});
    CHECK(default_boyd_lawton_schedule(3).back() == SpecTuple{200, 200 * 200 + 1});

    CHECK(mahler_boyd_lawton(P("z1*z2"), schedule).value == doctest::Approx(1));
    CHECK(mahler_boyd_lawton(P("z1 - 2", 2), schedule).value == doctest::Approx(2));
    const double quad = log_mahler_quadrature(P("1 + z1 + z2"), 2048).value;
    for (std::int64_t k : {50, 100, 200}) {
      const std::vector<SpecTuple> one{SpecTuple{k}};
      CHECK(std::fabs(mahler_boyd_lawton(P("1 + z1 + z2"), one).value - quad) < 1e-2);
    }
  }

  TEST_CASE("method names") {
    for (auto m : {MeasureMethod::jensen, MeasureMethod::quadrature, MeasureMethod::boyd_lawton})
      CHECK(parse_measure_method(to_string(m)) == m);
    CHECK_THROWS(parse_measure_method("simpson"));
  }
}
