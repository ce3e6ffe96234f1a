#include <cmath>
#include <random>

#include "bdens/density.hpp"
#include "bdens/error.hpp"
#include "bdens/oracle.hpp"
#include "bdens/quadrature.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace bdens;
using testing::one;
using testing::x_var;

namespace {

const std::vector<std::pair<double, double>> kUnit{{0.0, 1.0}};

ReferenceMeasure unit() { return ReferenceMeasure::lebesgue(kUnit); }

}  // namespace

TEST_CASE("quadrature moments of h(x) = x") {
  const auto q = quadrature_moments(DensitySpec::polynomial(x_var()), unit(), 3);
  for (int k = 0; k <= 3; ++k) CHECK(q.moments[MultiIndex{k}] == doctest::Approx(1.0 / (k + 2)).epsilon(1e-15));
  CHECK(q.negative_samples == 0);
  CHECK(q.rule_error <= kRuleTolerance);
  CHECK_THROWS_AS(quadrature_moments(DensitySpec::polynomial(x_var()), unit(), 3, QuadratureOptions{2}),
                  InvalidArgument);
}

TEST_CASE("piecewise-constant densities integrate exactly") {
  const auto h = parse_density("box-indicator:0,0.5*2", 1);
  const auto q = quadrature_moments(h, unit(), 4);
  CHECK(q.moments[MultiIndex{0}] == 1.0);
  CHECK(q.moments[MultiIndex{1}] == 0.25);
  CHECK(q.moments[MultiIndex{2}] == doctest::Approx(1.0 / 12.0).epsilon(1e-15));

  // Boxes are clipped to the reference box.
  const auto wide = parse_density("box-indicator:-1,0.5", 1);
  CHECK(quadrature_moments(wide, unit(), 1).moments[MultiIndex{0}] == 0.5);

  // Against the Gaussian: half the mass sits on [0, inf).
  const auto half = DensitySpec::piecewise(1, {DensityBox{{{0.0, INFINITY}}, 1.0}});
  const auto g = quadrature_moments(half, ReferenceMeasure::gaussian(1), 4).moments;
  CHECK(g[MultiIndex{0}] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g[MultiIndex{2}] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g[MultiIndex{1}] == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));

  const auto neg = parse_density("box-indicator:0,1*-1", 1);
  CHECK(quadrature_moments(neg, unit(), 2).negative_samples == 1);
}

TEST_CASE("h = 1 reproduces the analytic moments") {
  const std::vector<std::pair<double, double>> box{{-1.0, 2.0}, {0.0, 0.5}};
  const ReferenceMeasure measures[] = {ReferenceMeasure::lebesgue(kUnit), ReferenceMeasure::lebesgue(box),
                                       ReferenceMeasure::gaussian(1), ReferenceMeasure::gaussian(2)};
  for (const auto& mu : measures) {
    const auto h = DensitySpec::polynomial(one(mu.nvars()));
    const auto q = quadrature_moments(h, mu, 10).moments;
    const auto z = mu.moments(10);
    for (const auto& alpha : z.basis()) CHECK(testing::close_rel(q[alpha], z[alpha], 1e-12));
  }
}

TEST_CASE("property: rules of different sizes agree on polynomial densities") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::vector<std::pair<double, double>> box{{0.0, 1.0}, {0.0, 1.0}};
  for (int trial = 0; trial < 10; ++trial) {
    SparsePoly p(2);
    for (const auto& alpha : MonomialBasis(2, 4)) p.add_term(alpha, u(rng));
    const auto h = DensitySpec::polynomial(p);
    const auto mu = ReferenceMeasure::lebesgue(box);
    const auto a = quadrature_moments(h, mu, 8).moments;
    const auto b = quadrature_moments(h, mu, 8, QuadratureOptions{15}).moments;
    for (const auto& alpha : a.basis()) CHECK(testing::close_rel(a[alpha], b[alpha], 1e-12));
  }
}

TEST_CASE("rational densities against the Gaussian") {
  const auto h = parse_density("rational:1;1+x^2", 1);
  CHECK(h.kind() == DensityKind::Rational);
  const auto q = quadrature_moments(h, ReferenceMeasure::gaussian(1), 8);
  CHECK(q.nodes_used == 9);
  // E[1/(1+X^2)] = sqrt(pi/2) e^{1/2} erfc(1/sqrt 2) for standard normal X.
  const double exact = std::sqrt(M_PI / 2.0) * std::exp(0.5) * std::erfc(1.0 / std::sqrt(2.0));
  const auto fine = quadrature_moments(h, ReferenceMeasure::gaussian(1), 8, QuadratureOptions{60});
  CHECK(fine.moments[MultiIndex{0}] == doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("Gauss rules validate against the analytic moments") {
  for (std::size_t n = 1; n <= 40; ++n) {
    const auto gl = gauss_legendre(n, -1.0, 3.0);
    const std::vector<std::pair<double, double>> b{{-1.0, 3.0}};
    CHECK(rule_error(gl, lebesgue_box_moments(b, gl.exactness_degree)) <= kRuleTolerance);
    const auto gh = gauss_hermite(n);
    CHECK(rule_error(gh, gaussian_moments(gh.exactness_degree, 1)) <= kRuleTolerance);
    for (double w : gh.weights) CHECK(w > 0.0);
  }
  CHECK(gauss_points_for(7) == 4);
  CHECK(gauss_points_for(8) == 5);
}

TEST_CASE("grid_sup") {
  CHECK(grid_sup(DensitySpec::polynomial(x_var()), kUnit, 11) == 1.0);
  CHECK(grid_sup(DensitySpec::polynomial(poly_mul(x_var(), one() - x_var())), kUnit, 101) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(grid_sup(DensitySpec::polynomial(one() * 3.5), kUnit, 2) == 3.5);
  CHECK_THROWS_AS(grid_sup(DensitySpec::polynomial(x_var()), kUnit, 1), InvalidArgument);
}

TEST_CASE("bisect_kappa") {
  const auto a = SymMatrix::from_rows({{2.0, 0.0}, {0.0, 1.0}});
  const auto b = SymMatrix::from_rows({{1.0, 0.0}, {0.0, 3.0}});
  CHECK(*bisect_kappa(a, b, 1e-8) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(*bisect_kappa(a, SymMatrix(2), 1e-8) == 0.0);
  CHECK(*bisect_kappa(SymMatrix::identity(3), SymMatrix::identity(3), 1e-10) == doctest::Approx(1.0).epsilon(1e-9));
  const auto sing = SymMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  CHECK_FALSE(bisect_kappa(sing, SymMatrix::from_rows({{0.0, 0.0}, {0.0, 1.0}}), 1e-8).has_value());
}

TEST_CASE("property: bisect_kappa agrees with min_kappa") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const auto a = testing::random_psd(rng, n, n);
    const auto b = testing::random_psd(rng, n, 1 + trial % n);
    const auto k = min_kappa(a, b);
    const auto bis = bisect_kappa(a, b, 1e-10);
    REQUIRE(bis.has_value());
    CHECK(std::abs(k.kappa - *bis) <= 1e-6 * std::max(1.0, k.kappa));
  }
}

TEST_CASE("polynomial parser") {
  CHECK(parse_polynomial("x", 1) == x_var());
  CHECK(parse_polynomial("(1 - x)^2", 1) == poly_mul(one() - x_var(), one() - x_var()));
  CHECK(parse_polynomial("2x1x2 - x2^3/4", 2).coefficient(MultiIndex({0, 3})) == -0.25);
  CHECK(parse_polynomial("2x1x2 - x2^3/4", 2).coefficient(MultiIndex({1, 1})) == 2.0);
  CHECK(parse_polynomial("-3", 2) == one(2) * -3.0);
  CHECK_THROWS_AS(parse_polynomial("x3", 2), InvalidArgument);
  CHECK_THROWS_AS(parse_polynomial("x^-1", 1), InvalidArgument);
  CHECK_THROWS_AS(parse_polynomial("1/x", 1), InvalidArgument);
  CHECK_THROWS_AS(parse_polynomial("x +", 1), InvalidArgument);
}

TEST_CASE("density parser") {
  const auto p = parse_density("poly:1+x", 1);
  CHECK(p.kind() == DensityKind::Polynomial);
  const std::vector<double> at{0.5};
  CHECK(p(at) == 1.5);

  const auto b = parse_density("box-indicator:0,1;0,0.5·3", 2);
  CHECK(b.kind() == DensityKind::PiecewiseConstant);
  const std::vector<double> in{0.2, 0.2}, out{0.2, 0.7};
  CHECK(b(in) == 3.0);
  CHECK(b(out) == 0.0);

  const std::vector<DensitySpec> parts{parse_density("box-indicator:0,0.5*2", 1),
                                       parse_density("box-indicator:0.5,1*1", 1)};
  const auto both = combine_densities(parts);
  CHECK(both.boxes().size() == 2);
  CHECK(quadrature_moments(both, unit(), 0).moments.mass() == 1.5);

  CHECK_THROWS_AS(parse_density("spline:x", 1), InvalidArgument);
  CHECK_THROWS_AS(parse_density("box-indicator:0,1", 2), InvalidArgument);
}
