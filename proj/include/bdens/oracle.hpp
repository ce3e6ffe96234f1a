#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bdens/density.hpp"
#include "bdens/linalg.hpp"
#include "bdens/moments.hpp"
#include "bdens/quadrature.hpp"

namespace bdens {

// Independent machinery used to build fixtures and to cross-check the kernel.

// Built-in reference measure mu.
struct ReferenceMeasure {
  enum class Kind { LebesgueBox, Gaussian };
  Kind kind = Kind::LebesgueBox;
  std::vector<std::pair<double, double>> bounds;  // LebesgueBox only
  std::size_t gaussian_nvars = 0;                 // Gaussian only

  static ReferenceMeasure lebesgue(std::vector<std::pair<double, double>> bounds);
  static ReferenceMeasure gaussian(std::size_t nvars);

  std::size_t nvars() const noexcept {
    return kind == Kind::LebesgueBox ? bounds.size() : gaussian_nvars;
  }
  MomentSequence moments(int max_degree) const;
};

struct QuadratureOptions {
  // Per-axis Gauss points for non-polynomial densities; 0 picks max_degree + 1.
  std::size_t points = 0;
};

struct QuadratureMoments {
  MomentSequence moments;
  std::size_t nodes_used = 0;
  std::size_t negative_samples = 0;  // h < 0 at a node: the fixture is invalid
  double rule_error = 0.0;           // validation error of the rule against mu
};

// Relative accuracy a rule must reach on mu's monomials before it is used.
inline constexpr double kRuleTolerance = 1e-12;

// y_alpha = int x^alpha h dmu. Polynomial densities use a Gauss rule exact to
// max_degree + deg(h); piecewise-constant densities integrate each box in
// closed form; other densities use the rule size from options.
QuadratureMoments quadrature_moments(const DensitySpec& h, const ReferenceMeasure& mu,
                                     int max_degree, const QuadratureOptions& opts = {});

// Largest sampled value of h on the uniform tensor grid (endpoints included).
// A lower estimate of sup h over the box.
double grid_sup(const DensitySpec& h, std::span<const std::pair<double, double>> domain,
                std::size_t points_per_axis);

// Policy used by the bisection oracle. The tolerance is tighter than the
// library default so that infeasible pairs stay infeasible at the cap.
inline constexpr TolPolicy kBisectPolicy{1e-14, 1e-14};
inline constexpr double kBisectCap = 1e12;

// Least kappa in [0, cap] with is_psd(kappa*A - B), by bisection to absolute
// tolerance tol. nullopt when even kappa = cap fails.
std::optional<double> bisect_kappa(const SymMatrix& a, const SymMatrix& b, double tol,
                                   const TolPolicy& policy = kBisectPolicy);

}  // namespace bdens
