#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bdens/linalg.hpp"
#include "bdens/moments.hpp"

namespace bdens {

// Certificate families for "y has a representing measure with density
// h <= kappa with respect to the measure behind z".
//   Schmudgen:  0 <= M_r(g_J y) <= kappa M_r(g_J z)  for all J in {1..m}
//   Putinar:    same over g_0 = 1, g_1, ..., g_m (needs putinar_ok)
//   Handelman:  0 <= L_y(g^a (1-g)^b) <= kappa L_z(g^a (1-g)^b), |a|+|b| <= r
//               (needs normalized and generates_algebra)
//   Noncompact: 0 <= M_r(y) <= kappa M_r(z) on R^n; sufficient only, and only
//               when z satisfies the Carleman condition.
enum class Method { Schmudgen, Putinar, Handelman, Noncompact };

const char* to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name);

enum class VerdictStatus { FeasibleUpToLevel, InfeasibleAtLevel };

const char* to_string(VerdictStatus s) noexcept;

struct ConstraintReport {
  std::string constraint;       // e.g. "J={1,2}", "j=0", "alpha=(1,0),beta=(0,1)", "M_r"
  std::optional<double> kappa;  // least kappa for this constraint alone
  double min_eig_y = 0.0;       // lambda_min of the y-side matrix (or L_y value, Handelman)
  double min_eig_z = 0.0;       // same for z
  bool borderline = false;
};

struct Violation {
  std::string constraint;
  // "nonnegativity" (y's matrix/value is negative) or "domination" (no kappa works)
  std::string kind;
  std::string detail;
  std::vector<double> witness;  // domination failure in matrix form: direction v
  double y_value = 0.0;         // lambda_min(y-side), v'M(y)v or L_y(p)
  double z_value = 0.0;         // v'M(z)v or L_z(p)
};

struct CarlemanDiagnostic {
  int kmax = 0;
  // partial_sums[i][k-1] = sum_{l=1..k} L_z(X_i^{2l})^{-1/(2l)}
  std::vector<std::vector<double>> partial_sums;
};

struct Verdict {
  Method method = Method::Schmudgen;
  int level = 0;
  VerdictStatus status = VerdictStatus::FeasibleUpToLevel;
  std::optional<double> kappa_lower;
  std::optional<Violation> violated;
  std::vector<ConstraintReport> per_constraint;
  std::vector<std::string> notes;
  bool zero_domination = false;  // y-side vanished: kappa = 0 trivially
  std::optional<int> inherited_from;  // kappa_curve: infeasibility copied from this level
  std::optional<CarlemanDiagnostic> carleman;
};

struct CheckOptions {
  TolPolicy tol;
  unsigned threads = 1;  // constraint-level parallelism; results do not depend on it
};

// Largest generator count accepted by the Schmudgen checker (2^m subsets).
inline constexpr std::size_t kMaxSchmudgenGenerators = 20;

Verdict check_schmudgen(const MomentSequence& y, const MomentSequence& z,
                        const SemialgebraicSet& k, int r, const CheckOptions& opts = {});
Verdict check_putinar(const MomentSequence& y, const MomentSequence& z, const SemialgebraicSet& k,
                      int r, const CheckOptions& opts = {});
Verdict check_handelman(const MomentSequence& y, const MomentSequence& z,
                        const SemialgebraicSet& k, int r, const CheckOptions& opts = {});
Verdict check_noncompact(const MomentSequence& y, const MomentSequence& z, int r,
                         const CheckOptions& opts = {});

Verdict check(Method method, const MomentSequence& y, const MomentSequence& z,
              const SemialgebraicSet& k, int r, const CheckOptions& opts = {});

// Largest level the method can be evaluated at with the given data (-1 if none).
int max_admissible_level(Method method, const MomentSequence& y, const MomentSequence& z,
                         const SemialgebraicSet& k);

CarlemanDiagnostic carleman_partial_sums(const MomentSequence& z, int kmax);

// Verdicts for r = 0..r_max. After the first infeasible level every later
// level is reported infeasible without recomputation.
std::vector<std::pair<int, Verdict>> kappa_curve(const MomentSequence& y, const MomentSequence& z,
                                                 const SemialgebraicSet& k, Method method,
                                                 int r_max, const CheckOptions& opts = {});

}  // namespace bdens
