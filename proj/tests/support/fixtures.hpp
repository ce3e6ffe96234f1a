#pragma once

// Shared fixtures and random generators for the test suites.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "bdens/linalg.hpp"
#include "bdens/moments.hpp"
#include "bdens/poly.hpp"

namespace bdens::testing {

inline SparsePoly x_var(std::size_t nvars = 1, std::size_t i = 0) {
  return SparsePoly::variable(nvars, i);
}

inline SparsePoly one(std::size_t nvars = 1) { return SparsePoly::constant(nvars, 1.0); }

// g = [x, 1-x] on [0,1] with every hypothesis flag asserted.
inline SemialgebraicSet unit_interval_set() {
  SemialgebraicSet k;
  k.nvars = 1;
  k.generators = {x_var(), one() - x_var()};
  k.normalized = k.generates_algebra = k.putinar_ok = true;
  return k;
}

// g = [x1, 1-x1, ..., xn, 1-xn] on [0,1]^n.
inline SemialgebraicSet unit_box_set(std::size_t n) {
  SemialgebraicSet k;
  k.nvars = n;
  for (std::size_t i = 0; i < n; ++i) {
    k.generators.push_back(x_var(n, i));
    k.generators.push_back(one(n) - x_var(n, i));
  }
  k.normalized = k.generates_algebra = k.putinar_ok = true;
  return k;
}

inline MomentSequence unit_lebesgue(std::size_t n, int degree) {
  std::vector<std::pair<double, double>> b(n, {0.0, 1.0});
  return lebesgue_box_moments(b, degree);
}

inline SparsePoly random_poly(std::mt19937_64& rng, std::size_t nvars, int max_degree,
                              double density = 0.6) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::bernoulli_distribution keep(density);
  SparsePoly p(nvars);
  for (const auto& alpha : MonomialBasis(nvars, max_degree)) {
    if (keep(rng)) p.add_term(alpha, coef(rng));
  }
  return p;
}

inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ();
}

// Q diag(lambda) Q', symmetrized exactly.
inline SymMatrix spectral_matrix(const Eigen::MatrixXd& q, const Eigen::VectorXd& lambda) {
  const Eigen::MatrixXd m = q * lambda.asDiagonal() * q.transpose();
  SymMatrix s(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j <= i; ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

// Random PSD matrix of the given rank with eigenvalues in [lo, hi].
inline SymMatrix random_psd(std::mt19937_64& rng, int n, int rank, double lo = 0.1,
                            double hi = 3.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < rank; ++i) lambda(i) = u(rng);
  return spectral_matrix(random_orthogonal(rng, n), lambda);
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace bdens::testing
