#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "bdens/moments.hpp"
#include "bdens/poly.hpp"

namespace bdens {

// Dense real symmetric matrix with packed lower-triangle storage, so symmetry
// holds by construction. Rows/columns may carry monomial labels; matrices
// built from raw data are unlabeled.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * (dim + 1) / 2, 0.0) {}
  explicit SymMatrix(MonomialBasis basis);

  // Takes the lower triangle of a full row list; throws if not square or not
  // exactly symmetric.
  static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static SymMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  bool labeled() const noexcept { return basis_.size() == dim_ && dim_ > 0; }
  const MonomialBasis& basis() const noexcept { return basis_; }

  double operator()(std::size_t i, std::size_t j) const { return data_[offset(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { data_[offset(i, j)] = v; }

  // max_ij |a_ij|
  double max_abs() const noexcept;

  // a*A + b*B (labels taken from A)
  static SymMatrix combine(double a, const SymMatrix& A, double b, const SymMatrix& B);

  std::vector<std::vector<double>> to_rows() const;

  bool operator==(const SymMatrix& other) const { return dim_ == other.dim_ && data_ == other.data_; }

 private:
  static std::size_t offset(std::size_t i, std::size_t j) noexcept {
    if (i < j) std::swap(i, j);
    return i * (i + 1) / 2 + j;
  }

  std::size_t dim_ = 0;
  MonomialBasis basis_;
  std::vector<double> data_;
};

// Largest r with 2r + deg(theta) <= y.max_degree, or -1 when none exists.
int max_level(const MomentSequence& y, const SparsePoly& theta);
int max_level(int max_degree, int theta_degree);

// M_r(theta y): entry (alpha, beta) = sum_gamma theta_gamma y_{alpha+beta+gamma}
// over MonomialBasis(n, r). Throws DegreeShortfall when r > max_level.
SymMatrix localizing_matrix(const MomentSequence& y, const SparsePoly& theta, int r);

// M_r(y)
SymMatrix moment_matrix(const MomentSequence& y, int r);

}  // namespace bdens
