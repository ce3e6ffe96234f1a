#include "bdens/matrices.hpp"

#include <algorithm>
#include <cmath>

#include "bdens/error.hpp"

namespace bdens {

SymMatrix::SymMatrix(MonomialBasis basis)
    : dim_(basis.size()), basis_(std::move(basis)), data_(dim_ * (dim_ + 1) / 2, 0.0) {}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw DimensionMismatch("matrix rows must form a square");
    for (std::size_t j = 0; j <= i; ++j) {
      if (rows[i][j] != rows[j][i]) throw InvalidArgument("matrix is not symmetric");
      m.set(i, j, rows[i][j]);
    }
  }
  return m;
}

SymMatrix SymMatrix::identity(std::size_t dim) {
  SymMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

SymMatrix SymMatrix::combine(double a, const SymMatrix& A, double b, const SymMatrix& B) {
  if (A.dim_ != B.dim_) throw DimensionMismatch("combine: matrices differ in dimension");
  SymMatrix r = A;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a * A.data_[k] + b * B.data_[k];
  return r;
}

std::vector<std::vector<double>> SymMatrix::to_rows() const {
  std::vector<std::vector<double>> rows(dim_, std::vector<double>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) rows[i][j] = (*this)(i, j);
  }
  return rows;
}

int max_level(int max_degree, int theta_degree) {
  const int slack = max_degree - std::max(theta_degree, 0);
  return slack < 0 ? -1 : slack / 2;
}

int max_level(const MomentSequence& y, const SparsePoly& theta) {
  return max_level(y.max_degree(), theta.degree());
}

SymMatrix localizing_matrix(const MomentSequence& y, const SparsePoly& theta, int r) {
  if (theta.nvars() != y.nvars()) {
    throw DimensionMismatch("localizing_matrix: shift polynomial and moments differ in nvars");
  }
  if (r < 0) throw InvalidArgument("level must be nonnegative");
  const int top = max_level(y, theta);
  if (r > top) {
    throw DegreeShortfall("level " + std::to_string(r) + " needs moments up to degree " +
                              std::to_string(2 * r + std::max(theta.degree(), 0)) +
                              " but only " + std::to_string(y.max_degree()) +
                              " are available; max admissible level is " + std::to_string(top),
                          top);
  }
  SymMatrix m{MonomialBasis(y.nvars(), r)};
  const auto& basis = m.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const MultiIndex ab = basis[i] + basis[j];
      double sum = 0.0;
      for (const auto& [gamma, c] : theta.terms()) sum += c * y[ab + gamma];
      m.set(i, j, sum);
    }
  }
  return m;
}

SymMatrix moment_matrix(const MomentSequence& y, int r) {
  return localizing_matrix(y, SparsePoly::constant(y.nvars(), 1.0), r);
}

}  // namespace bdens
