#include <random>

#include "bdens/error.hpp"
#include "bdens/moments.hpp"
#include "bdens/poly.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace bdens;
using bdens::testing::one;
using bdens::testing::x_var;

TEST_CASE("multi-index degree and sum") {
  MultiIndex a{1, 2, 0};
  CHECK(a.degree() == 3);
  CHECK(((a + MultiIndex{0, 1, 4}) == MultiIndex{1, 3, 4}));
  CHECK_THROWS_AS((a + MultiIndex{1, 1}), DimensionMismatch);
  CHECK_THROWS_AS(MultiIndex({1, -1}), InvalidArgument);
}

TEST_CASE("monomial basis is graded lex with C(n+r, n) elements") {
  MonomialBasis b(2, 2);
  REQUIRE(b.size() == 6);
  CHECK((b[0] == MultiIndex{0, 0}));
  CHECK((b[1] == MultiIndex{1, 0}));
  CHECK((b[2] == MultiIndex{0, 1}));
  CHECK((b[3] == MultiIndex{2, 0}));
  CHECK((b[4] == MultiIndex{1, 1}));
  CHECK((b[5] == MultiIndex{0, 2}));

  for (std::size_t n = 1; n <= 4; ++n) {
    for (int r = 0; r <= 6; ++r) {
      MonomialBasis basis(n, r);
      CHECK(basis.size() == monomial_count(n, r));
      for (std::size_t i = 1; i < basis.size(); ++i) CHECK(GradedLexLess{}(basis[i - 1], basis[i]));
    }
  }
  CHECK(monomial_count(2, 8) == 45);
  CHECK(MonomialBasis(3, -1).size() == 0);
}

TEST_CASE("poly_mul examples") {
  const SparsePoly x = x_var();
  SUBCASE("difference of squares") {
    const SparsePoly p = poly_mul(one() + x, one() - x);
    SparsePoly expect(1);
    expect.add_term(MultiIndex{0}, 1.0);
    expect.add_term(MultiIndex{2}, -1.0);
    CHECK(p == expect);
    CHECK(p.terms().size() == 2);  // the x terms cancelled and were dropped
  }
  SUBCASE("identity element") {
    const SparsePoly p = x * 3.0 + one();
    CHECK(poly_mul(p, one()) == p);
  }
  SUBCASE("binomial square in two variables") {
    const SparsePoly s = x_var(2, 0) + x_var(2, 1);
    const SparsePoly sq = poly_mul(s, s);
    CHECK((sq.coefficient(MultiIndex{2, 0}) == 1.0));
    CHECK((sq.coefficient(MultiIndex{1, 1}) == 2.0));
    CHECK((sq.coefficient(MultiIndex{0, 2}) == 1.0));
    CHECK(sq.terms().size() == 3);
  }
  SUBCASE("variable count mismatch") {
    CHECK_THROWS_AS(poly_mul(x_var(1), x_var(2)), DimensionMismatch);
  }
}

TEST_CASE("degree convention") {
  CHECK(SparsePoly(2).degree() == -1);
  CHECK(one(2).degree() == 0);
  CHECK((x_var(2, 1) * x_var(2, 1).coefficient(MultiIndex{0, 1})).degree() == 1);
  SparsePoly p = x_var() - x_var();
  CHECK(p.is_zero());
  CHECK(p.degree() == -1);
}

TEST_CASE("subset_product") {
  const std::vector<SparsePoly> g{x_var(), one() - x_var()};
  const std::vector<std::size_t> both{0, 1};
  const std::vector<std::size_t> second{1};
  const SparsePoly p = subset_product(g, both, 1);
  CHECK(p.coefficient(MultiIndex{1}) == 1.0);
  CHECK(p.coefficient(MultiIndex{2}) == -1.0);
  CHECK(p.terms().size() == 2);
  CHECK(subset_product(g, {}, 1) == one());
  CHECK(subset_product(g, second, 1) == one() - x_var());
  CHECK(subset_product_mask(g, 0b11, 1) == p);
  CHECK(subset_product_mask(g, 0, 1) == one());
}

TEST_CASE("power_product") {
  const std::vector<SparsePoly> single{x_var()};
  CHECK(power_product(single, MultiIndex{1}, MultiIndex{1}, 1) == x_var() - poly_mul(x_var(), x_var()));
  CHECK(power_product(single, MultiIndex{0}, MultiIndex{0}, 1) == one());

  // g = [x, 1-x], alpha = (1,0), beta = (0,1): x * (1 - (1 - x)) = x^2, checked
  // against a direct poly_mul expansion.
  const std::vector<SparsePoly> g{x_var(), one() - x_var()};
  const SparsePoly expect = poly_mul(g[0], one() - g[1]);
  const SparsePoly got = power_product(g, MultiIndex{1, 0}, MultiIndex{0, 1}, 1);
  CHECK(got == expect);
  CHECK(got == SparsePoly::monomial(MultiIndex{2}));

  CHECK_THROWS_AS(power_product(g, MultiIndex{1}, MultiIndex{0, 1}, 1), DimensionMismatch);
}

TEST_CASE("apply_functional") {
  const MomentSequence leb = bdens::testing::unit_lebesgue(1, 4);
  const SparsePoly f = poly_mul(one() - x_var(), one() - x_var());
  CHECK(apply_functional(leb, f) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(apply_functional(leb, SparsePoly(1)) == 0.0);

  const std::vector<double> half{0.5};
  const MomentSequence dirac = dirac_moments(half, 3);
  CHECK(apply_functional(dirac, SparsePoly::monomial(MultiIndex{3})) == 0.125);

  CHECK_THROWS_AS(apply_functional(dirac, SparsePoly::monomial(MultiIndex{4})), MissingMoment);
  CHECK_THROWS_AS(apply_functional(dirac, x_var(2)), DimensionMismatch);
}

TEST_CASE("property: poly_mul is commutative and associative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 3;
    // Small integer coefficients keep every product exact in double.
    auto small = [&] {
      std::uniform_int_distribution<int> c(-3, 3);
      SparsePoly p(n);
      for (const auto& alpha : MonomialBasis(n, 3)) p.add_term(alpha, c(rng));
      return p;
    };
    const SparsePoly p = small(), q = small(), s = small();
    CHECK(poly_mul(p, q) == poly_mul(q, p));
    CHECK(poly_mul(poly_mul(p, q), s) == poly_mul(p, poly_mul(q, s)));
  }
}

TEST_CASE("property: subset_product splits over disjoint unions") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SparsePoly> g;
    for (int j = 0; j < 5; ++j) g.push_back(bdens::testing::random_poly(rng, 2, 2));
    std::uniform_int_distribution<unsigned long> mask(0, 31);
    const unsigned long j1 = mask(rng);
    const unsigned long j2 = mask(rng) & ~j1;
    const SparsePoly whole = subset_product_mask(g, j1 | j2, 2);
    const SparsePoly split = poly_mul(subset_product_mask(g, j1, 2), subset_product_mask(g, j2, 2));
    REQUIRE(whole.terms().size() == split.terms().size());
    for (const auto& [alpha, c] : whole.terms()) {
      CHECK(bdens::testing::close_rel(c, split.coefficient(alpha), 1e-12));
    }
  }
}

TEST_CASE("property: L_y is linear") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 2;
    MomentSequence y(n, 6);
    for (const auto& alpha : y.basis()) y.set(alpha, u(rng));
    const SparsePoly f = bdens::testing::random_poly(rng, n, 6);
    const SparsePoly g = bdens::testing::random_poly(rng, n, 6);
    const double a = u(rng), b = u(rng);
    const double lhs = apply_functional(y, f * a + g * b);
    const double rhs = a * apply_functional(y, f) + b * apply_functional(y, g);
    double scale = 0.0;
    for (const auto& [alpha, c] : f.terms()) scale += std::abs(a * c * y[alpha]);
    for (const auto& [alpha, c] : g.terms()) scale += std::abs(b * c * y[alpha]);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("evaluate and to_string") {
  const SparsePoly p = poly_mul(x_var(2, 0), one(2) - x_var(2, 1)) * 2.0;
  const std::vector<double> pt{3.0, 0.5};
  CHECK(p.evaluate(pt) == 3.0);
  CHECK(p.to_string() == "2*x1 - 2*x1*x2");
  CHECK(SparsePoly(1).to_string() == "0");
}
