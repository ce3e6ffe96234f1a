#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "bdens/matrices.hpp"

namespace bdens {

// Numerical tolerances shared by the PSD test and the kappa kernel.
//   is_psd:    lambda_min >= -rel_tol * max(1, max |lambda|)
//   min_kappa: rank cut tau_rank = rank_tol * max(1, lambda_max(A)) * dim
// rank_tol must stay below lambda_min / lambda_max of the Hilbert-like moment
// matrices being compared (about 2e-12 for M_8 of Lebesgue on [0,1]).
struct TolPolicy {
  double rel_tol = 1e-9;
  double rank_tol = 1e-14;
};

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, matching eigenvalues
};

// Full symmetric eigendecomposition (Householder tridiagonalization followed
// by implicit-shift QL). Throws ConvergenceFailure if the iteration cap is hit.
EigenDecomposition eigh(const SymMatrix& a);

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;  // the tau the test was made against
};

PsdResult is_psd(const SymMatrix& a, const TolPolicy& policy = {});

enum class KappaStatus { Finite, Infeasible, Zero };

const char* to_string(KappaStatus s) noexcept;

// Least kappa >= 0 with kappa*A - B PSD.
struct KappaResult {
  KappaStatus status = KappaStatus::Finite;
  double kappa = 0.0;       // meaningful for Finite and Zero (0)
  Eigen::VectorXd witness;  // Infeasible: unit v with v'Av ~ 0 and v'Bv > tau_rank
  double witness_b = 0.0;   // v'Bv of the witness
  double witness_a = 0.0;   // v'Av of the witness
  double null_b_max = 0.0;  // largest v'Bv over the numerical null space of A
  bool borderline = false;  // null space of A meets B in (0, tau_rank]
  std::size_t rank = 0;     // numerical rank of A
  double tau_rank = 0.0;
};

KappaResult min_kappa(const SymMatrix& a, const SymMatrix& b, const TolPolicy& policy = {});

}  // namespace bdens
