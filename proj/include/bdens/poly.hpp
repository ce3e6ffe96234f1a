#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bdens {

// Exponent vector alpha in N^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t nvars) : exps_(nvars, 0) {}
  MultiIndex(std::initializer_list<int> exps);
  explicit MultiIndex(std::vector<int> exps);

  static MultiIndex unit(std::size_t nvars, std::size_t var);

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  int degree() const noexcept;

  MultiIndex operator+(const MultiIndex& other) const;

  bool operator==(const MultiIndex&) const = default;

  std::string to_string() const;

 private:
  std::vector<int> exps_;
};

// Graded lexicographic order: lower total degree first; within a degree the
// larger leading exponent comes first, so the basis reads 1, x1, x2, x1^2, ...
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// All alpha with |alpha| <= max_degree in graded-lex order.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(std::size_t nvars, int max_degree);

  std::size_t nvars() const noexcept { return nvars_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return elems_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool operator==(const MonomialBasis&) const = default;

 private:
  std::size_t nvars_ = 0;
  int max_degree_ = -1;
  std::vector<MultiIndex> elems_;
};

// C(n + d, n): number of monomials in n variables of degree at most d.
std::size_t monomial_count(std::size_t nvars, int max_degree);

// Sparse multivariate polynomial with real coefficients. Terms are kept in
// graded-lex order and exact zeros are never stored.
class SparsePoly {
 public:
  using TermMap = std::map<MultiIndex, double, GradedLexLess>;

  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, double c);
  static SparsePoly monomial(const MultiIndex& alpha, double coef = 1.0);
  // x_var (0-based)
  static SparsePoly variable(std::size_t nvars, std::size_t var);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  // -1 for the zero polynomial.
  int degree() const noexcept;
  double coefficient(const MultiIndex& alpha) const;

  // Adds coef * X^alpha, dropping the term if it cancels to zero.
  void add_term(const MultiIndex& alpha, double coef);

  double evaluate(std::span<const double> point) const;

  SparsePoly& operator+=(const SparsePoly& other);
  SparsePoly& operator-=(const SparsePoly& other);
  SparsePoly& operator*=(double s);

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, double s) { return a *= s; }
  friend SparsePoly operator*(double s, SparsePoly a) { return a *= s; }

  bool operator==(const SparsePoly&) const = default;

  std::string to_string() const;

 private:
  void check_nvars(const MultiIndex& alpha) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

// Coefficients with magnitude below this are treated as exact zeros.
inline constexpr double kZeroCoefficient = 1e-300;

SparsePoly poly_mul(const SparsePoly& p, const SparsePoly& q);
SparsePoly poly_pow(const SparsePoly& p, int k);

// prod_{j in subset} g_j, with g_{empty} = 1. subset holds 0-based indices.
SparsePoly subset_product(std::span<const SparsePoly> g, std::span<const std::size_t> subset,
                          std::size_t nvars);

// Same, with the subset given as a bitmask over the generators.
SparsePoly subset_product_mask(std::span<const SparsePoly> g, unsigned long mask,
                               std::size_t nvars);

// prod_j g_j^alpha_j * prod_j (1 - g_j)^beta_j; alpha and beta have one entry
// per generator.
SparsePoly power_product(std::span<const SparsePoly> g, const MultiIndex& alpha,
                         const MultiIndex& beta, std::size_t nvars);

}  // namespace bdens
