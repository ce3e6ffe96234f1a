#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "bdens/error.hpp"
#include "bdens/linalg.hpp"
#include "bdens/matrices.hpp"
#include "bdens/moments.hpp"
#include "bdens/quadrature.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/fixtures.hpp"

using namespace bdens;

TEST_CASE("lebesgue_box_moments") {
  const auto z = testing::unit_lebesgue(1, 3);
  CHECK(z.size() == 4);
  for (int k = 0; k <= 3; ++k) CHECK(z[MultiIndex{k}] == doctest::Approx(1.0 / (k + 1)).epsilon(1e-16));
  CHECK((testing::unit_lebesgue(2, 2)[MultiIndex{1, 1}] == 0.25));

  const std::vector<std::pair<double, double>> sym{{-1.0, 1.0}};
  const auto w = lebesgue_box_moments(sym, 5);
  CHECK(w[MultiIndex{1}] == 0.0);
  CHECK(w[MultiIndex{2}] == doctest::Approx(2.0 / 3.0));

  const std::vector<std::pair<double, double>> bad{{1.0, 1.0}};
  CHECK_THROWS_AS(lebesgue_box_moments(bad, 2), InvalidArgument);
}

TEST_CASE("gaussian_moments") {
  const auto g = gaussian_moments(8, 1);
  CHECK(g[MultiIndex{2}] == 1.0);
  CHECK(g[MultiIndex{4}] == 3.0);
  CHECK(g[MultiIndex{8}] == 105.0);
  CHECK(g[MultiIndex{5}] == 0.0);
  CHECK((gaussian_moments(3, 2)[MultiIndex{1, 2}] == 0.0));
  CHECK((gaussian_moments(4, 2)[MultiIndex{2, 2}] == 1.0));

  // Independent check by Gauss-Hermite quadrature.
  const auto rule = gauss_hermite(6);
  double m4 = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) m4 += rule.weights[k] * std::pow(rule.node(k)[0], 4);
  CHECK(m4 == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(rule_error(rule, gaussian_moments(rule.exactness_degree, 1)) <= 1e-12);
}

TEST_CASE("dirac_moments") {
  const std::vector<double> half{0.5};
  CHECK(dirac_moments(half, 3)[MultiIndex{3}] == 0.125);
  const std::vector<double> zero{0.0};
  CHECK(dirac_moments(zero, 2)[MultiIndex{0}] == 1.0);
  CHECK(dirac_moments(zero, 2)[MultiIndex{1}] == 0.0);
  const std::vector<double> pt{1.0, 2.0};
  CHECK((dirac_moments(pt, 3)[MultiIndex{2, 1}] == 2.0));
}

TEST_CASE("complete shell size") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (int d = 0; d <= 6; ++d) CHECK(testing::unit_lebesgue(n, d).size() == monomial_count(n, d));
}

TEST_CASE("access beyond the truncation") {
  const auto z = testing::unit_lebesgue(1, 2);
  CHECK_THROWS_AS(z[MultiIndex{3}], MissingMoment);
  CHECK_FALSE(z.contains(MultiIndex{3}));
  CHECK_THROWS_AS(z[MultiIndex({1, 0})], DimensionMismatch);
}

TEST_CASE("combine and scaling") {
  const auto z = testing::unit_lebesgue(1, 4);
  const std::vector<double> half{0.5};
  const auto d = dirac_moments(half, 4);
  const auto c = MomentSequence::combine(2.0, z, -1.0, d);
  CHECK(c[MultiIndex{1}] == doctest::Approx(0.5));
  CHECK((3.0 * z).mass() == 3.0);
  CHECK_THROWS_AS(MomentSequence::combine(1.0, z, 1.0, testing::unit_lebesgue(1, 3)), DimensionMismatch);
}

TEST_CASE("moment file round trip") {
  const auto z = testing::unit_lebesgue(1, 4);
  const auto path = std::filesystem::temp_directory_path() / "bdens_roundtrip.json";
  write_moments(z, path);
  const auto back = read_moments(path);
  CHECK(back.same_values(z));
  std::filesystem::remove(path);

  // Values that do not have short decimal forms survive exactly.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  MomentSequence y(2, 5, "random");
  for (const auto& alpha : y.basis()) y.set(alpha, u(rng) * 1e-7);
  const auto y2 = moments_from_json(moments_to_json(y));
  CHECK(y2.same_values(y));
  CHECK(y2.label() == "random");
}

TEST_CASE("moment file output is sorted graded lex") {
  const auto j = nlohmann::json::parse(moments_to_json(testing::unit_lebesgue(2, 2)));
  const MonomialBasis basis(2, 2);
  REQUIRE(j.at("moments").size() == basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    CHECK(j["moments"][k]["alpha"].get<std::vector<int>>() == basis[k].exponents());
  }
}

TEST_CASE("moment file errors") {
  const std::string missing = R"({"nvars":1,"max_degree":2,"label":"",
    "moments":[{"alpha":[0],"value":1},{"alpha":[1],"value":0.5}]})";
  CHECK_THROWS_AS(moments_from_json(missing), IncompleteShell);

  const std::string dup = R"({"nvars":1,"max_degree":1,"label":"",
    "moments":[{"alpha":[0],"value":1},{"alpha":[1],"value":0.5},{"alpha":[1],"value":0.5}]})";
  CHECK_THROWS_AS(moments_from_json(dup), DuplicateIndex);

  CHECK_THROWS_AS(moments_from_json("{not json"), MalformedFile);
  CHECK_THROWS_AS(moments_from_json(R"({"nvars":1,"max_degree":0,"label":"","moments":[{"alpha":[0,0],"value":1}]})"),
                  MalformedFile);
  CHECK_THROWS_AS(read_moments("/nonexistent/bdens.json"), MalformedFile);

  // Entry order in the file is irrelevant.
  const std::string shuffled = R"({"nvars":1,"max_degree":1,"label":"x",
    "moments":[{"alpha":[1],"value":0.5},{"alpha":[0],"value":1}]})";
  CHECK(moments_from_json(shuffled)[MultiIndex{1}] == 0.5);
}

TEST_CASE("set file round trip and validation") {
  const auto k = testing::unit_box_set(2);
  const auto back = set_from_json(set_to_json(k));
  REQUIRE(back.size() == 4);
  for (std::size_t j = 0; j < 4; ++j) CHECK(back.generators[j] == k.generators[j]);
  CHECK(back.normalized);
  CHECK(back.generates_algebra);
  CHECK(back.putinar_ok);

  SemialgebraicSet bad = k;
  bad.generators.push_back(testing::x_var(3));
  CHECK_THROWS_AS(bad.validate(), DimensionMismatch);
}

TEST_CASE("Lebesgue moment matrices are positive definite for r <= 5") {
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto z = testing::unit_lebesgue(n, 10);
    for (int r = 0; r <= 5; ++r) {
      const auto e = eigh(moment_matrix(z, r));
      CHECK(e.eigenvalues(0) > 0.0);
    }
  }
}

TEST_CASE("Dirac moment matrices have numerical rank 1") {
  const std::vector<double> pt{0.5, 0.25};
  const auto y = dirac_moments(pt, 12);
  for (int r = 0; r <= 6; ++r) {
    const auto m = moment_matrix(y, r);
    const auto res = min_kappa(m, SymMatrix(m.dim()));
    CHECK(res.rank == 1);
  }
}
