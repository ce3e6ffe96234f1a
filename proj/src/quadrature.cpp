#include "bdens/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "bdens/error.hpp"

namespace bdens {

namespace {

using Real = long double;
using VecX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using MatX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Values of the orthonormal polynomials p_0..p_n at x and the derivative of
// p_n, for the three-term recurrence b_{j+1} p_{j+1} = x p_j - b_j p_{j-1}.
// coef holds b_1..b_n.
struct Recurrence {
  Real christoffel = 0;  // sum_{j<n} p_j(x)^2
  Real pn = 0;
  Real dpn = 0;
};

Recurrence recur(const VecX& coef, Real x) {
  Recurrence out;
  Real p_prev = 0, p = 1, d_prev = 0, d = 0;
  for (Eigen::Index j = 0; j < coef.size(); ++j) {
    out.christoffel += p * p;
    const Real b_prev = j == 0 ? 0 : coef(j - 1);
    const Real p_next = (x * p - b_prev * p_prev) / coef(j);
    const Real d_next = (p + x * d - b_prev * d_prev) / coef(j);
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
  }
  out.pn = p;
  out.dpn = d;
  return out;
}

// Golub-Welsch for a symmetric weight with recurrence coefficients coef
// (b_1..b_n). The eigenvalues of the Jacobi matrix seed a Newton polish on
// p_n, and the weights come from the Christoffel sum, which keeps the tiny
// tail weights accurate to relative precision.
std::pair<std::vector<Real>, std::vector<Real>> golub_welsch(const VecX& coef, Real mass) {
  const Eigen::Index n = coef.size();
  if (n == 1) return {{0}, {mass}};
  const VecX diag = VecX::Zero(n);
  const VecX offdiag = coef.head(n - 1);
  Eigen::SelfAdjointEigenSolver<MatX> es;
  es.computeFromTridiagonal(diag, offdiag, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("Golub-Welsch eigensolver failed");
  std::vector<Real> x(n), w(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Real xk = es.eigenvalues()(k);
    for (int it = 0; it < 3; ++it) {
      const auto r = recur(coef, xk);
      if (r.dpn == 0) break;
      xk -= r.pn / r.dpn;
    }
    x[k] = xk;
    w[k] = mass / recur(coef, xk).christoffel;
  }
  // Both families are symmetric about 0; symmetrize to remove rounding skew.
  for (Eigen::Index k = 0; k < n / 2; ++k) {
    const Eigen::Index j = n - 1 - k;
    const Real xs = (x[j] - x[k]) / 2;
    x[k] = -xs;
    x[j] = xs;
    const Real ws = (w[k] + w[j]) / 2;
    w[k] = w[j] = ws;
  }
  if (n % 2 == 1) x[n / 2] = 0;
  return {x, w};
}

}  // namespace

std::size_t gauss_points_for(int exactness) {
  return static_cast<std::size_t>(std::max(exactness, 0) / 2 + 1);
}

QuadratureRule gauss_legendre(std::size_t npoints, double lo, double hi) {
  if (npoints == 0) throw InvalidArgument("quadrature needs at least one point");
  if (!(lo < hi)) throw InvalidArgument("degenerate interval for Gauss-Legendre rule");
  VecX off(static_cast<Eigen::Index>(npoints));
  for (Eigen::Index k = 1; k <= static_cast<Eigen::Index>(npoints); ++k) {
    const Real kk = static_cast<Real>(k);
    off(k - 1) = kk / std::sqrt(4 * kk * kk - 1);
  }
  const auto [x, w] = golub_welsch(off, 2);
  const Real half = (static_cast<Real>(hi) - lo) / 2;
  const Real mid = (static_cast<Real>(hi) + lo) / 2;
  QuadratureRule rule;
  rule.nvars = 1;
  rule.exactness_degree = static_cast<int>(2 * npoints - 1);
  for (std::size_t k = 0; k < npoints; ++k) {
    rule.nodes.push_back(static_cast<double>(mid + half * x[k]));
    rule.weights.push_back(static_cast<double>(half * w[k]));
  }
  return rule;
}

QuadratureRule gauss_hermite(std::size_t npoints) {
  if (npoints == 0) throw InvalidArgument("quadrature needs at least one point");
  VecX off(static_cast<Eigen::Index>(npoints));
  for (Eigen::Index k = 1; k <= static_cast<Eigen::Index>(npoints); ++k) {
    off(k - 1) = std::sqrt(static_cast<Real>(k));
  }
  const auto [x, w] = golub_welsch(off, 1);
  QuadratureRule rule;
  rule.nvars = 1;
  rule.exactness_degree = static_cast<int>(2 * npoints - 1);
  for (std::size_t k = 0; k < npoints; ++k) {
    rule.nodes.push_back(static_cast<double>(x[k]));
    rule.weights.push_back(static_cast<double>(w[k]));
  }
  return rule;
}

QuadratureRule tensor_product(std::span<const QuadratureRule> axes) {
  QuadratureRule rule;
  rule.nvars = axes.size();
  if (axes.empty()) {
    rule.weights.push_back(1.0);
    rule.exactness_degree = 0;
    return rule;
  }
  rule.exactness_degree = axes.front().exactness_degree;
  std::size_t total = 1;
  for (const auto& a : axes) {
    if (a.nvars != 1) throw InvalidArgument("tensor_product expects 1-D rules");
    total *= a.size();
    rule.exactness_degree = std::min(rule.exactness_degree, a.exactness_degree);
  }
  rule.nodes.reserve(total * axes.size());
  rule.weights.reserve(total);
  std::vector<std::size_t> idx(axes.size(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    double w = 1.0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      rule.nodes.push_back(axes[i].nodes[idx[i]]);
      w *= axes[i].weights[idx[i]];
    }
    rule.weights.push_back(w);
    // Odometer with the last axis fastest.
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
    }
  }
  return rule;
}

QuadratureRule box_rule(std::span<const std::pair<double, double>> bounds, int exactness) {
  std::vector<QuadratureRule> axes;
  for (const auto& [lo, hi] : bounds) axes.push_back(gauss_legendre(gauss_points_for(exactness), lo, hi));
  return tensor_product(axes);
}

QuadratureRule gaussian_rule(std::size_t nvars, int exactness) {
  std::vector<QuadratureRule> axes(nvars, gauss_hermite(gauss_points_for(exactness)));
  return tensor_product(axes);
}

MomentSequence rule_moments(const QuadratureRule& rule, int max_degree) {
  MomentSequence y(rule.nvars, max_degree, "quadrature");
  std::vector<double> acc(y.size(), 0.0);
  const auto& basis = y.basis();
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const auto x = rule.node(k);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      double m = rule.weights[k];
      for (std::size_t i = 0; i < rule.nvars; ++i) m *= std::pow(x[i], basis[b][i]);
      acc[b] += m;
    }
  }
  for (std::size_t b = 0; b < basis.size(); ++b) y.set(basis[b], acc[b]);
  return y;
}

double rule_error(const QuadratureRule& rule, const MomentSequence& analytic) {
  double worst = 0.0;
  for (const auto& alpha : analytic.basis()) {
    bool within = true;
    for (std::size_t i = 0; i < alpha.size(); ++i) within = within && alpha[i] <= rule.exactness_degree;
    if (!within) continue;
    double q = 0.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto x = rule.node(k);
      double m = rule.weights[k];
      for (std::size_t i = 0; i < rule.nvars; ++i) m *= std::pow(x[i], alpha[i]);
      q += m;
      scale += std::abs(m);
    }
    if (scale > 0) worst = std::max(worst, std::abs(q - analytic[alpha]) / scale);
  }
  return worst;
}

}  // namespace bdens
