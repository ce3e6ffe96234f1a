#include "bdens/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bdens/error.hpp"

namespace bdens {

ReferenceMeasure ReferenceMeasure::lebesgue(std::vector<std::pair<double, double>> bounds) {
  ReferenceMeasure mu;
  mu.kind = Kind::LebesgueBox;
  mu.bounds = std::move(bounds);
  return mu;
}

ReferenceMeasure ReferenceMeasure::gaussian(std::size_t nvars) {
  ReferenceMeasure mu;
  mu.kind = Kind::Gaussian;
  mu.gaussian_nvars = nvars;
  return mu;
}

MomentSequence ReferenceMeasure::moments(int max_degree) const {
  return kind == Kind::LebesgueBox ? lebesgue_box_moments(bounds, max_degree)
                                   : gaussian_moments(max_degree, gaussian_nvars);
}

namespace {

QuadratureRule reference_rule(const ReferenceMeasure& mu, int exactness) {
  return mu.kind == ReferenceMeasure::Kind::LebesgueBox ? box_rule(mu.bounds, exactness)
                                                        : gaussian_rule(mu.gaussian_nvars, exactness);
}

// int_lo^hi x^k dx for k = 0..max_degree; empty interval gives zeros.
std::vector<double> interval_moments(double lo, double hi, int max_degree) {
  std::vector<double> m(static_cast<std::size_t>(max_degree) + 1, 0.0);
  if (!(lo < hi)) return m;
  double plo = lo;
  double phi = hi;
  for (int k = 0; k <= max_degree; ++k) {
    m[k] = (phi - plo) / (k + 1);
    plo *= lo;
    phi *= hi;
  }
  return m;
}

// int_lo^hi x^k phi(x) dx for the standard normal density phi, via
// I_k = (k-1) I_{k-2} + lo^{k-1} phi(lo) - hi^{k-1} phi(hi).
std::vector<double> truncated_normal_moments(double lo, double hi, int max_degree) {
  std::vector<double> m(static_cast<std::size_t>(max_degree) + 1, 0.0);
  if (!(lo < hi)) return m;
  const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto pdf = [&](double x) { return std::isinf(x) ? 0.0 : inv_sqrt2pi * std::exp(-0.5 * x * x); };
  // x^{k-1} phi(x), zero at infinity.
  auto edge = [&](double x, int p) { return std::isinf(x) ? 0.0 : std::pow(x, p) * pdf(x); };
  const double s = std::numbers::sqrt2;
  m[0] = lo >= 0 ? 0.5 * (std::erfc(lo / s) - std::erfc(hi / s))
                 : 0.5 * (std::erfc(-hi / s) - std::erfc(-lo / s));
  if (max_degree >= 1) m[1] = pdf(lo) - pdf(hi);
  for (int k = 2; k <= max_degree; ++k) {
    m[k] = (k - 1) * m[k - 2] + edge(lo, k - 1) - edge(hi, k - 1);
  }
  return m;
}

MomentSequence piecewise_moments(const DensitySpec& h, const ReferenceMeasure& mu, int max_degree,
                                 std::size_t& negative) {
  const std::size_t n = mu.nvars();
  MomentSequence y(n, max_degree);
  std::vector<double> acc(y.size(), 0.0);
  for (const auto& box : h.boxes()) {
    if (box.value < 0) ++negative;
    std::vector<std::vector<double>> axis(n);
    for (std::size_t i = 0; i < n; ++i) {
      double lo = box.bounds[i].first;
      double hi = box.bounds[i].second;
      if (mu.kind == ReferenceMeasure::Kind::LebesgueBox) {
        lo = std::max(lo, mu.bounds[i].first);
        hi = std::min(hi, mu.bounds[i].second);
        axis[i] = interval_moments(lo, hi, max_degree);
      } else {
        axis[i] = truncated_normal_moments(lo, hi, max_degree);
      }
    }
    for (std::size_t b = 0; b < y.size(); ++b) {
      double v = box.value;
      for (std::size_t i = 0; i < n; ++i) v *= axis[i][y.basis()[b][i]];
      acc[b] += v;
    }
  }
  for (std::size_t b = 0; b < y.size(); ++b) y.set(y.basis()[b], acc[b]);
  return y;
}

}  // namespace

QuadratureMoments quadrature_moments(const DensitySpec& h, const ReferenceMeasure& mu,
                                     int max_degree, const QuadratureOptions& opts) {
  if (h.nvars() != mu.nvars()) {
    throw DimensionMismatch("density has " + std::to_string(h.nvars()) +
                            " variables, reference measure has " + std::to_string(mu.nvars()));
  }
  if (max_degree < 0) throw InvalidArgument("max_degree must be nonnegative");
  QuadratureMoments out;

  if (h.kind() == DensityKind::PiecewiseConstant) {
    out.moments = piecewise_moments(h, mu, max_degree, out.negative_samples);
    out.moments.set_label("quadrature:" + h.description());
    return out;
  }

  std::size_t points = 0;
  if (h.kind() == DensityKind::Polynomial) {
    const int need = max_degree + std::max(h.numerator().degree(), 0);
    points = gauss_points_for(need);
    if (opts.points != 0) {
      if (2 * static_cast<int>(opts.points) - 1 < need) {
        throw InvalidArgument("quadrature with " + std::to_string(opts.points) +
                              " points is exact to degree " + std::to_string(2 * opts.points - 1) +
                              ", polynomial fixture needs " + std::to_string(need));
      }
      points = opts.points;
    }
  } else {
    points = opts.points != 0 ? opts.points : static_cast<std::size_t>(max_degree) + 1;
  }
  const int exactness = static_cast<int>(2 * points - 1);
  const QuadratureRule rule = reference_rule(mu, exactness);
  out.rule_error = rule_error(rule, mu.moments(exactness));
  if (!(out.rule_error <= kRuleTolerance)) {
    throw ConvergenceFailure("quadrature rule failed validation against the reference moments "
                             "(relative error " + std::to_string(out.rule_error) + ")");
  }

  MomentSequence y(mu.nvars(), max_degree);
  std::vector<double> acc(y.size(), 0.0);
  const auto& basis = y.basis();
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto x = rule.node(k);
    const double hx = h(x);
    if (hx < 0) ++out.negative_samples;
    const double wh = rule.weights[k] * hx;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      double m = wh;
      for (std::size_t i = 0; i < x.size(); ++i) m *= std::pow(x[i], basis[b][i]);
      acc[b] += m;
    }
  }
  for (std::size_t b = 0; b < basis.size(); ++b) y.set(basis[b], acc[b]);
  y.set_label("quadrature:" + h.description());
  out.moments = std::move(y);
  out.nodes_used = rule.size();
  return out;
}

double grid_sup(const DensitySpec& h, std::span<const std::pair<double, double>> domain,
                std::size_t points_per_axis) {
  if (points_per_axis < 2) throw InvalidArgument("grid_sup needs at least 2 points per axis");
  if (domain.size() != h.nvars()) throw DimensionMismatch("grid_sup: domain dimension mismatch");
  const std::size_t n = domain.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  double best = -std::numeric_limits<double>::infinity();
  const double steps = static_cast<double>(points_per_axis - 1);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto [lo, hi] = domain[i];
      // Exact endpoints, interior points by interpolation.
      x[i] = idx[i] == points_per_axis - 1 ? hi : lo + (hi - lo) * (static_cast<double>(idx[i]) / steps);
    }
    best = std::max(best, h(x));
    std::size_t i = n;
    while (i-- > 0) {
      if (++idx[i] < points_per_axis) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

std::optional<double> bisect_kappa(const SymMatrix& a, const SymMatrix& b, double tol,
                                   const TolPolicy& policy) {
  if (a.dim() != b.dim()) throw DimensionMismatch("bisect_kappa: dimension mismatch");
  if (!(tol > 0)) throw InvalidArgument("bisection tolerance must be positive");
  auto feasible = [&](double kappa) {
    return is_psd(SymMatrix::combine(kappa, a, -1.0, b), policy).psd;
  };
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  double hi = kBisectCap;
  if (!feasible(hi)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace bdens
