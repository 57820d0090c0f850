#include <doctest.h>

#include "fkdet/errors.hpp"
#include "fkdet/laurent.hpp"
#include "test_support.hpp"

using namespace fkdet;
using fkdet::testing::random_matrix;
using fkdet::testing::random_poly;
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

TEST_SUITE("laurent") {
  TEST_CASE("addition merges and cancels") {
    CHECK((P("z1") + P("-z1")).is_zero());
    CHECK(P("1 + z1") + P("z1") == P("1 + 2*z1"));
    const LaurentPolynomial s = P("z1^-1", 2) + P("z2", 2);
    CHECK(s.rank() == 2);
    CHECK(s.size() == 2);
    CHECK(s.coefficient({-1, 0}) == 1);
  }

  TEST_CASE("multiplication") {
    CHECK(P("z1") * P("z1^-1") == P("1"));
    CHECK(P("z - 1") * P("z + 1") == P("z^2 - 1"));
    CHECK(P("1 + z1 + z2") * P("1", 2) == P("1 + z1 + z2"));
  }

  TEST_CASE("rank mismatch is rejected") {
    CHECK_THROWS_AS(P("z1", 1) + P("z2", 2), DomainError);
  }

  TEST_CASE("adjoint") {
    CHECK(adjoint(P("2 + 3*z")) == P("2 + 3*z^-1"));
    CHECK(adjoint(P("z1*z2^-2")) == P("z1^-1*z2^2"));
    Rng rng(11);
    for (int k = 0; k < 50; ++k) {
      const auto p = random_poly(rng, 2, -3, 3, 4, 5);
      const auto q = random_poly(rng, 2, -3, 3, 4, 5);
      CHECK(adjoint(adjoint(p)) == p);
      CHECK(adjoint(p * q) == adjoint(q) * adjoint(p));
      CHECK(adjoint(p + q) == adjoint(p) + adjoint(q));
    }
  }

  TEST_CASE("ring axioms on random triples") {
    Rng rng(12);
    for (int k = 0; k < 60; ++k) {
      const std::size_t rank = 1 + k % 3;
      const auto a = random_poly(rng, rank, -2, 4, 3, 4);
      const auto b = random_poly(rng, rank, -2, 4, 3, 4);
      const auto c = random_poly(rng, rank, -2, 4, 3, 4);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
    }
  }

  TEST_CASE("specialization") {
    CHECK(specialize(P("z1*z2"), std::vector<std::int64_t>{3}) == P("z^4"));
    CHECK(specialize(P("1 + z1 + z2"), std::vector<std::int64_t>{5}) == P("1 + z + z^5"));
    Rng rng(13);
    const std::vector<std::int64_t> ks{7};
    for (int k = 0; k < 40; ++k) {
      const auto a = random_poly(rng, 2, -2, 2, 3, 4);
      const auto b = random_poly(rng, 2, -2, 2, 3, 4);
      CHECK(specialize(a * b, ks) == specialize(a, ks) * specialize(b, ks));
      CHECK(specialize(a + b, ks) == specialize(a, ks) + specialize(b, ks));
      const auto m = random_matrix(rng, 2, 2, 2, -2, 2, 2, 3);
      CHECK(determinant(specialize(m, ks)) == specialize(determinant(m), ks));
    }
    CHECK(specialize(P("1", 2), ks) == P("1"));
  }

  TEST_CASE("support bound") {
    const auto p = P("z1^2*z2^-3 + z1");
    CHECK(support_bound(p, 0) == 2);
    CHECK(support_bound(p, 1) == 3);
    CHECK(support_bound(P("7", 2), 0) == 0);
    CHECK(support_bound(P("7", 2), 1) == 0);
    CHECK(support_bound(P("z1^-5"), 0) == 5);
  }

  TEST_CASE("unit coefficient and l1 norm") {
    CHECK(unit_coefficient(P("z + 3 + z^-1")) == 3);
    CHECK(l1_norm(P("z - 2")) == 3);
  }

  TEST_CASE("exact division") {
    const auto q = exact_divide(P("z^2 - 1"), P("z - 1"));
    REQUIRE(q);
    CHECK(*q == P("z + 1"));
    CHECK_FALSE(exact_divide(P("z^2 + 1"), P("z - 1")));
  }

  TEST_CASE("embed") {
    const std::vector<std::size_t> axes{1};
    CHECK(embed(P("z - 2"), 2, axes) == P("z2 - 2", 2));
  }

  TEST_CASE("matrix adjoint and products") {
    const LaurentMatrix z = M(1, {{"z"}});
    CHECK(adjoint(z) == M(1, {{"z^-1"}}));
    CHECK(z * M(1, {{"z^-1"}}) == LaurentMatrix::identity(1, 1));
    Rng rng(14);
    for (int k = 0; k < 20; ++k) {
      const auto a = random_matrix(rng, 1, 2, 3, -2, 2, 3, 3);
      const auto b = random_matrix(rng, 1, 3, 2, -2, 2, 3, 3);
      const auto c = random_matrix(rng, 1, 2, 2, -2, 2, 3, 3);
      CHECK(adjoint(adjoint(a)) == a);
      CHECK(adjoint(a * b) == adjoint(b) * adjoint(a));
      CHECK(a * LaurentMatrix::identity(1, 3) == a);
      CHECK(((a * b) * c) == (a * (b * c)));
    }
  }

  TEST_CASE("determinants") {
    CHECK(determinant(M(1, {{"z", "0"}, {"0", "z^-1"}})) == P("1"));
    CHECK(determinant(M(1, {{"1 + z", "1"}, {"0", "1 - z"}})) == P("1 - z^2"));
    Rng rng(15);
    for (int k = 0; k < 40; ++k) {
      const std::size_t n = 1 + k % 5;
      const auto a = random_matrix(rng, 1 + k % 2, n, n, -2, 2, 2, 3);
      CHECK(determinant_bareiss(a) == determinant_cofactor(a));
    }
  }

  TEST_CASE("kernel bases") {
    const auto a1 = M(1, {{"z"}, {"0"}});
    auto k1 = kernel_basis(a1);
    CHECK(k1.dimension == 1);
    CHECK((k1.basis * a1).is_zero());
    CHECK(k1.basis(0, 0).is_zero());

    const auto a2 = M(1, {{"1 + z"}, {"2"}});
    auto k2 = kernel_basis(a2);
    CHECK(k2.dimension == 1);
    CHECK((k2.basis * a2).is_zero());
    // Up to a unit, B = [2, -(1 + z)].
    const auto ratio = exact_divide(k2.basis(0, 1), P("1 + z"));
    REQUIRE(ratio);
    CHECK(ratio->is_monomial());
    CHECK(exact_divide(k2.basis(0, 0), P("2")));

    CHECK(kernel_basis(M(1, {{"1", "z"}, {"z", "2"}})).dimension == 0);

    Rng rng(16);
    for (int k = 0; k < 30; ++k) {
      const std::size_t rank = 1 + k % 2;
      // Third row a combination of the first two, so q >= 1.
      auto a = random_matrix(rng, rank, 3, 2, -1, 2, 2, 3);
      const auto u = random_poly(rng, rank, 0, 1, 2, 2);
      const auto v = random_poly(rng, rank, 0, 1, 2, 2);
      for (std::size_t j = 0; j < 2; ++j) a(2, j) = u * a(0, j) + v * a(1, j);
      for (auto norm : {KernelNormalization::canonical, KernelNormalization::raw}) {
        const KernelBasis kb = kernel_basis(a, norm);
        CHECK(kb.dimension == 3 - rank_over_fraction_field(a));
        CHECK((kb.basis * a).is_zero());
        // Kernel rows and the columns of A span the whole space.
        CHECK(rank_over_fraction_field(kb.basis) == kb.dimension);
        CHECK(rank_over_fraction_field(stack_rows(kb.basis, a.transpose())) == 3);
      }
    }
  }

  TEST_CASE("parser examples") {
    const auto l = P("z^10 + z^9 - z^7 - z^6 - z^5 - z^4 - z^3 + z + 1");
    CHECK(l.size() == 9);
    CHECK(l.rank() == 1);
    CHECK(P("1").rank() == 1);
    CHECK(P("1").coefficient({0}) == 1);
    const auto p = P("z1*z2^-2 + 3");
    CHECK(p.rank() == 2);
    CHECK(p.size() == 2);
    CHECK(P("3/4*z1 - 1/2").coefficient({1}) == Rational(3, 4));
  }

  TEST_CASE("parser errors carry a position") {
    try {
      (void)P("z + * 2");
      FAIL("no exception");
    } catch (const ParseError& e) {
      CHECK(e.position() > 0);
    }
    CHECK_THROWS_AS(P(""), ParseError);
    CHECK_THROWS_AS(P("z3", 2), DomainError);
  }

  TEST_CASE("print then parse round-trips") {
    Rng rng(17);
    for (int k = 0; k < 1000; ++k) {
      const std::size_t rank = 1 + k % 3;
      auto p = random_poly(rng, rank, -4, 4, 9, 1 + k % 6);
      if (k % 7 == 0) p *= Rational(1, 1 + k % 5);
      const auto q = parse_polynomial(p.to_string(), rank);
      CHECK(q == p);
    }
  }
}
