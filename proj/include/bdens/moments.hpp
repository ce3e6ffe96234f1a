#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bdens/poly.hpp"

namespace bdens {

// Truncated moment sequence y_alpha, complete for every |alpha| <= max_degree.
// Values are stored in graded-lex order of MonomialBasis(nvars, max_degree).
// The mass y_0 is not required to be 1.
class MomentSequence {
 public:
  MomentSequence() = default;
  MomentSequence(std::size_t nvars, int max_degree, std::string label = {});

  std::size_t nvars() const noexcept { return basis_.nvars(); }
  int max_degree() const noexcept { return basis_.max_degree(); }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  const MonomialBasis& basis() const noexcept { return basis_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool contains(const MultiIndex& alpha) const noexcept;
  // Throws MissingMoment when |alpha| > max_degree.
  double operator[](const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, double value);

  double mass() const { return values_.empty() ? 0.0 : values_.front(); }

  MomentSequence& operator*=(double s);
  friend MomentSequence operator*(double s, MomentSequence y) { return y *= s; }
  // a*y + b*z over the common shell; both must share nvars and max_degree.
  static MomentSequence combine(double a, const MomentSequence& y, double b,
                                const MomentSequence& z);

  // Equal shells and bitwise-equal values (labels ignored).
  bool same_values(const MomentSequence& other) const noexcept;

 private:
  std::size_t position(const MultiIndex& alpha) const;

  MonomialBasis basis_;
  std::map<MultiIndex, std::size_t, GradedLexLess> index_;
  std::vector<double> values_;
  std::string label_;
};

// L_y(f) = sum_alpha f_alpha y_alpha, accumulated in graded-lex term order.
double apply_functional(const MomentSequence& y, const SparsePoly& f);

// K = {x : g_j(x) >= 0}. The three flags are hypotheses the user asserts;
// checkers refuse methods whose hypothesis is not asserted.
struct SemialgebraicSet {
  std::size_t nvars = 0;
  std::vector<SparsePoly> generators;
  bool normalized = false;         // 0 <= g_j <= 1 on K
  bool generates_algebra = false;  // R[X] = R[g_1, ..., g_m]
  bool putinar_ok = false;         // N - |X|^2 in Q(g) for some N

  std::size_t size() const noexcept { return generators.size(); }
  void validate() const;
};

// Tensor-product Lebesgue moments of the box prod_i [lo_i, hi_i].
MomentSequence lebesgue_box_moments(std::span<const std::pair<double, double>> bounds,
                                    int max_degree);

// Product standard normal moments: (k-1)!! for even k, 0 for odd k.
MomentSequence gaussian_moments(int max_degree, std::size_t nvars);

// Moments of the unit point mass at `point`.
MomentSequence dirac_moments(std::span<const double> point, int max_degree);

// JSON file formats. read_* validate the complete-shell invariant.
MomentSequence read_moments(const std::filesystem::path& path);
void write_moments(const MomentSequence& seq, const std::filesystem::path& path);
MomentSequence moments_from_json(const std::string& text);
std::string moments_to_json(const MomentSequence& seq);

SemialgebraicSet read_set(const std::filesystem::path& path);
void write_set(const SemialgebraicSet& set, const std::filesystem::path& path);
SemialgebraicSet set_from_json(const std::string& text);
std::string set_to_json(const SemialgebraicSet& set);

}  // namespace bdens
