#include "bdens/moments.hpp"

#include <cmath>

#include "bdens/error.hpp"

namespace bdens {

MomentSequence::MomentSequence(std::size_t nvars, int max_degree, std::string label)
    : basis_(nvars, max_degree), label_(std::move(label)) {
  if (max_degree < 0) throw InvalidArgument("max_degree must be nonnegative");
  values_.assign(basis_.size(), 0.0);
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

bool MomentSequence::contains(const MultiIndex& alpha) const noexcept {
  return alpha.size() == nvars() && alpha.degree() <= max_degree();
}

std::size_t MomentSequence::position(const MultiIndex& alpha) const {
  if (alpha.size() != nvars()) {
    throw DimensionMismatch("moment index " + alpha.to_string() + " has wrong length");
  }
  if (alpha.degree() > max_degree()) {
    throw MissingMoment("moment " + alpha.to_string() + " of degree " +
                        std::to_string(alpha.degree()) + " exceeds available degree " +
                        std::to_string(max_degree()));
  }
  return index_.at(alpha);
}

double MomentSequence::operator[](const MultiIndex& alpha) const {
  return values_[position(alpha)];
}

void MomentSequence::set(const MultiIndex& alpha, double value) {
  values_[position(alpha)] = value;
}

MomentSequence& MomentSequence::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

MomentSequence MomentSequence::combine(double a, const MomentSequence& y, double b,
                                       const MomentSequence& z) {
  if (y.nvars() != z.nvars() || y.max_degree() != z.max_degree()) {
    throw DimensionMismatch("combine: moment sequences have different shells");
  }
  MomentSequence r(y.nvars(), y.max_degree());
  for (std::size_t i = 0; i < r.values_.size(); ++i) {
    r.values_[i] = a * y.values_[i] + b * z.values_[i];
  }
  return r;
}

bool MomentSequence::same_values(const MomentSequence& other) const noexcept {
  return basis_ == other.basis_ && values_ == other.values_;
}

double apply_functional(const MomentSequence& y, const SparsePoly& f) {
  if (f.nvars() != y.nvars()) throw DimensionMismatch("apply_functional: variable count mismatch");
  double sum = 0.0;
  for (const auto& [alpha, c] : f.terms()) sum += c * y[alpha];
  return sum;
}

void SemialgebraicSet::validate() const {
  for (const auto& g : generators) {
    if (g.nvars() != nvars) {
      throw DimensionMismatch("generator has " + std::to_string(g.nvars()) +
                              " variables, set has " + std::to_string(nvars));
    }
  }
}

MomentSequence lebesgue_box_moments(std::span<const std::pair<double, double>> bounds,
                                    int max_degree) {
  const std::size_t n = bounds.size();
  // Per-axis 1-D moments (hi^{k+1} - lo^{k+1}) / (k+1).
  std::vector<std::vector<double>> axis(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [lo, hi] = bounds[i];
    if (!(lo < hi)) {
      throw InvalidArgument("degenerate interval [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "] for variable " + std::to_string(i + 1));
    }
    axis[i].resize(static_cast<std::size_t>(max_degree) + 1);
    double plo = lo;
    double phi = hi;
    for (int k = 0; k <= max_degree; ++k) {
      axis[i][k] = (phi - plo) / (k + 1);
      plo *= lo;
      phi *= hi;
    }
  }
  MomentSequence z(n, max_degree, "lebesgue-box");
  for (const auto& alpha : z.basis()) {
    double v = 1.0;
    for (std::size_t i = 0; i < n; ++i) v *= axis[i][alpha[i]];
    z.set(alpha, v);
  }
  return z;
}

MomentSequence gaussian_moments(int max_degree, std::size_t nvars) {
  std::vector<double> axis(static_cast<std::size_t>(std::max(max_degree, 0)) + 1, 0.0);
  axis[0] = 1.0;
  for (int k = 2; k <= max_degree; k += 2) axis[k] = axis[k - 2] * (k - 1);
  MomentSequence z(nvars, max_degree, "gaussian");
  for (const auto& alpha : z.basis()) {
    double v = 1.0;
    for (std::size_t i = 0; i < nvars; ++i) v *= axis[alpha[i]];
    z.set(alpha, v);
  }
  return z;
}

MomentSequence dirac_moments(std::span<const double> point, int max_degree) {
  MomentSequence y(point.size(), max_degree, "dirac");
  for (const auto& alpha : y.basis()) {
    double v = 1.0;
    for (std::size_t i = 0; i < point.size(); ++i) v *= std::pow(point[i], alpha[i]);
    y.set(alpha, v);
  }
  return y;
}

}  // namespace bdens
