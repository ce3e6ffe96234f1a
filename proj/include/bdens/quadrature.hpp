#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "bdens/moments.hpp"

namespace bdens {

// Tensor-product Gauss rule. Node k occupies nodes[k*nvars .. k*nvars+nvars).
// Nodes are in a fixed order (lexicographic over ascending 1-D nodes) so every
// sum over the rule is reproducible.
struct QuadratureRule {
  std::size_t nvars = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  int exactness_degree = -1;  // per-axis degree integrated exactly (2N - 1)

  std::size_t size() const noexcept { return weights.size(); }
  std::span<const double> node(std::size_t k) const {
    return {nodes.data() + k * nvars, nvars};
  }
};

// N-point Gauss-Legendre rule for Lebesgue measure on [lo, hi].
QuadratureRule gauss_legendre(std::size_t npoints, double lo, double hi);

// N-point Gauss-Hermite rule for the standard normal distribution.
QuadratureRule gauss_hermite(std::size_t npoints);

QuadratureRule tensor_product(std::span<const QuadratureRule> axes);

// Tensor Gauss-Legendre rule on a box, exact for every monomial of per-axis
// degree <= exactness.
QuadratureRule box_rule(std::span<const std::pair<double, double>> bounds, int exactness);

// Tensor Gauss-Hermite rule for the product standard normal.
QuadratureRule gaussian_rule(std::size_t nvars, int exactness);

// Points needed for a Gauss rule to be exact up to the given degree.
std::size_t gauss_points_for(int exactness);

// Moments of the rule's discrete measure up to max_degree.
MomentSequence rule_moments(const QuadratureRule& rule, int max_degree);

// Largest |rule - analytic| / scale over all monomials up to the rule's
// exactness, where scale is the rule's integral of |x^alpha|.
double rule_error(const QuadratureRule& rule, const MomentSequence& analytic);

}  // namespace bdens
