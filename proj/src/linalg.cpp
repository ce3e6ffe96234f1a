#include "bdens/linalg.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "bdens/error.hpp"

namespace bdens {

namespace {

// The kernel runs in extended precision: moment matrices are Hilbert-like and
// the range-restricted ratio divides by eigenvalues close to the rank cut.
using Real = long double;
using MatX = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using VecX = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

MatX to_dense(const SymMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  MatX m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      m(i, j) = m(j, i) = static_cast<Real>(a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
  }
  return m;
}

Eigen::SelfAdjointEigenSolver<MatX> solve(const MatX& m) {
  Eigen::SelfAdjointEigenSolver<MatX> es(m, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "symmetric eigensolver did not converge (dim " << m.rows() << ", max |a_ij| "
       << static_cast<double>(m.cwiseAbs().maxCoeff()) << ")";
    throw ConvergenceFailure(os.str());
  }
  return es;
}

void check_finite(const SymMatrix& a) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (!std::isfinite(a(i, j))) throw InvalidArgument("matrix has non-finite entries");
    }
  }
}

}  // namespace

const char* to_string(KappaStatus s) noexcept {
  switch (s) {
    case KappaStatus::Finite: return "FINITE";
    case KappaStatus::Infeasible: return "INFEASIBLE";
    case KappaStatus::Zero: return "ZERO";
  }
  return "?";
}

EigenDecomposition eigh(const SymMatrix& a) {
  check_finite(a);
  EigenDecomposition out;
  if (a.dim() == 0) return out;
  const auto es = solve(to_dense(a));
  out.eigenvalues = es.eigenvalues().cast<double>();
  out.eigenvectors = es.eigenvectors().cast<double>();
  return out;
}

PsdResult is_psd(const SymMatrix& a, const TolPolicy& policy) {
  check_finite(a);
  PsdResult r;
  if (a.dim() == 0) {
    r.psd = true;
    r.tolerance = policy.rel_tol;
    return r;
  }
  const auto es = solve(to_dense(a));
  const auto& ev = es.eigenvalues();
  const Real lo = ev(0);
  const Real spread = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  const Real tau = static_cast<Real>(policy.rel_tol) * std::max<Real>(1, spread);
  r.min_eigenvalue = static_cast<double>(lo);
  r.tolerance = static_cast<double>(tau);
  r.psd = lo >= -tau;
  return r;
}

KappaResult min_kappa(const SymMatrix& a, const SymMatrix& b, const TolPolicy& policy) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("min_kappa: A is " + std::to_string(a.dim()) + "x" +
                            std::to_string(a.dim()) + ", B is " + std::to_string(b.dim()) + "x" +
                            std::to_string(b.dim()));
  }
  check_finite(a);
  check_finite(b);
  KappaResult res;
  const std::size_t n = a.dim();
  if (n == 0) {
    res.status = KappaStatus::Zero;
    return res;
  }

  const MatX A = to_dense(a);
  const MatX B = to_dense(b);
  const auto es = solve(A);
  const VecX& lam = es.eigenvalues();
  const MatX& U = es.eigenvectors();

  const Real lam_max = lam(lam.size() - 1);
  const Real tau_rank = static_cast<Real>(policy.rank_tol) * std::max<Real>(1, lam_max) *
                        static_cast<Real>(n);
  res.tau_rank = static_cast<double>(tau_rank);

  // B below rounding level relative to A counts as the zero matrix.
  const Real zero_cut = static_cast<Real>(DBL_EPSILON) *
                        std::max<Real>(1, A.cwiseAbs().maxCoeff()) * static_cast<Real>(n);
  if (B.cwiseAbs().maxCoeff() <= zero_cut) {
    res.status = KappaStatus::Zero;
    res.kappa = 0.0;
    res.rank = static_cast<std::size_t>((lam.array() > tau_rank).count());
    return res;
  }

  // Eigenvalues ascend, so the numerical null space is a leading block.
  Eigen::Index null_dim = 0;
  while (null_dim < lam.size() && lam(null_dim) <= tau_rank) ++null_dim;
  const Eigen::Index range_dim = lam.size() - null_dim;
  res.rank = static_cast<std::size_t>(range_dim);

  if (null_dim > 0) {
    const MatX N = U.leftCols(null_dim);
    const MatX bn = N.transpose() * B * N;
    const auto nes = solve(MatX(0.5 * (bn + bn.transpose())));
    const Real worst = nes.eigenvalues()(null_dim - 1);
    res.null_b_max = static_cast<double>(worst);
    if (worst > tau_rank) {
      const VecX v = N * nes.eigenvectors().col(null_dim - 1);
      res.status = KappaStatus::Infeasible;
      res.witness = v.cast<double>();
      res.witness_b = static_cast<double>(v.dot(B * v));
      res.witness_a = static_cast<double>(v.dot(A * v));
      return res;
    }
    res.borderline = worst > 0;
  }

  if (range_dim == 0) {
    res.status = KappaStatus::Finite;
    res.kappa = 0.0;
    return res;
  }

  const MatX R = U.rightCols(range_dim);
  const VecX inv_sqrt = lam.tail(range_dim).array().rsqrt();
  MatX S = inv_sqrt.asDiagonal() * (R.transpose() * B * R) * inv_sqrt.asDiagonal();
  S = 0.5 * (S + S.transpose());
  const Eigen::SelfAdjointEigenSolver<MatX> ses(S, Eigen::EigenvaluesOnly);
  if (ses.info() != Eigen::Success) {
    throw ConvergenceFailure("eigensolver did not converge on the range-restricted pencil");
  }
  res.status = KappaStatus::Finite;
  res.kappa = static_cast<double>(std::max<Real>(0, ses.eigenvalues()(range_dim - 1)));
  return res;
}

}  // namespace bdens
