#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bdens/poly.hpp"

namespace bdens {

// Density h used to synthesize test sequences y_alpha = int x^alpha h dmu.
enum class DensityKind {
  Polynomial,         // h = p(x)
  PiecewiseConstant,  // h = sum_k c_k * 1[box_k]
  Rational,           // h = p(x) / q(x)
  Function,           // arbitrary callable (in-process fixtures only)
};

struct DensityBox {
  std::vector<std::pair<double, double>> bounds;  // one (lo, hi) per variable
  double value = 1.0;
};

class DensitySpec {
 public:
  static DensitySpec polynomial(SparsePoly p);
  static DensitySpec piecewise(std::size_t nvars, std::vector<DensityBox> boxes);
  static DensitySpec rational(SparsePoly numerator, SparsePoly denominator);
  static DensitySpec function(std::size_t nvars, std::function<double(std::span<const double>)> fn,
                              std::string description);

  DensityKind kind() const noexcept { return kind_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const SparsePoly& numerator() const noexcept { return num_; }
  const SparsePoly& denominator() const noexcept { return den_; }
  const std::vector<DensityBox>& boxes() const noexcept { return boxes_; }
  const std::string& description() const noexcept { return description_; }

  double operator()(std::span<const double> x) const;

 private:
  DensityKind kind_ = DensityKind::Polynomial;
  std::size_t nvars_ = 0;
  SparsePoly num_;
  SparsePoly den_;
  std::vector<DensityBox> boxes_;
  std::function<double(std::span<const double>)> fn_;
  std::string description_;
};

// Polynomial expression over x1..xn (plain `x` when nvars == 1): numbers,
// + - * ^ with integer exponents, parentheses and division by constants.
SparsePoly parse_polynomial(std::string_view text, std::size_t nvars);

// Density mini-language:
//   poly:<expr>                      polynomial density
//   rational:<num>;<den>             ratio of two polynomials
//   box-indicator:<lo,hi;...>*<c>    c on the box, 0 elsewhere ("·" also
//                                    accepted in place of "*"; c defaults to 1)
// Several box-indicator terms may be joined into one piecewise density with
// combine_densities.
DensitySpec parse_density(std::string_view text, std::size_t nvars);

// Sum of densities of the same kind (polynomials add, box lists concatenate).
DensitySpec combine_densities(std::span<const DensitySpec> parts);

}  // namespace bdens
