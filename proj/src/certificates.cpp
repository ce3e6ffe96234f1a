#include "bdens/certificates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cctype>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "bdens/error.hpp"
#include "bdens/matrices.hpp"

namespace bdens {

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Schmudgen: return "SCHMUDGEN";
    case Method::Putinar: return "PUTINAR";
    case Method::Handelman: return "HANDELMAN";
    case Method::Noncompact: return "NONCOMPACT";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "schmudgen" || s == "schmuedgen") return Method::Schmudgen;
  if (s == "putinar") return Method::Putinar;
  if (s == "handelman") return Method::Handelman;
  if (s == "noncompact") return Method::Noncompact;
  return std::nullopt;
}

const char* to_string(VerdictStatus s) noexcept {
  switch (s) {
    case VerdictStatus::FeasibleUpToLevel: return "FEASIBLE_UP_TO_LEVEL";
    case VerdictStatus::InfeasibleAtLevel: return "INFEASIBLE_AT_LEVEL";
  }
  return "?";
}

namespace {

// Runs body(i) for i in [0, count). Each index writes only its own slot, so
// the outcome is independent of the thread count.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::mutex failure_mutex;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void require_compatible(const MomentSequence& y, const MomentSequence& z) {
  if (y.nvars() != z.nvars()) {
    throw DimensionMismatch("y has " + std::to_string(y.nvars()) + " variables, z has " +
                            std::to_string(z.nvars()));
  }
}

void require_set(const MomentSequence& y, const SemialgebraicSet& k) {
  k.validate();
  if (k.nvars != y.nvars()) {
    throw DimensionMismatch("set has " + std::to_string(k.nvars) + " variables, moments have " +
                            std::to_string(y.nvars()));
  }
}

void require_level(int r, int top, const char* method) {
  if (r < 0) throw InvalidArgument("level must be nonnegative");
  if (r > top) {
    throw DegreeShortfall(std::string(method) + ": level " + std::to_string(r) +
                              " exceeds the available moments; max admissible level is " +
                              std::to_string(top),
                          top);
  }
}

std::string subset_name(unsigned long mask, std::size_t m) {
  std::ostringstream os;
  os << "J={";
  bool first = true;
  for (std::size_t j = 0; j < m; ++j) {
    if (mask & (1UL << j)) {
      if (!first) os << ',';
      os << j + 1;
      first = false;
    }
  }
  os << '}';
  return os.str();
}

// Outcome of one PSD-domination constraint: M_r(theta y) >= 0 and
// M_r(theta y) <= kappa M_r(theta z).
struct MatrixConstraint {
  ConstraintReport report;
  std::optional<Violation> violation;
  bool zero = false;  // y-side matrix is numerically zero
};

MatrixConstraint evaluate_matrix_constraint(const MomentSequence& y, const MomentSequence& z,
                                            const SparsePoly& theta, int r, std::string name,
                                            const TolPolicy& tol) {
  MatrixConstraint out;
  out.report.constraint = name;
  const SymMatrix my = localizing_matrix(y, theta, r);
  const SymMatrix mz = localizing_matrix(z, theta, r);
  const PsdResult py = is_psd(my, tol);
  const PsdResult pz = is_psd(mz, tol);
  out.report.min_eig_y = py.min_eigenvalue;
  out.report.min_eig_z = pz.min_eigenvalue;
  if (!py.psd) {
    Violation v;
    v.constraint = name;
    v.kind = "nonnegativity";
    std::ostringstream os;
    os << "M_" << r << "(theta y) has eigenvalue " << py.min_eigenvalue << " < -" << py.tolerance;
    v.detail = os.str();
    v.y_value = py.min_eigenvalue;
    out.violation = std::move(v);
    return out;
  }
  const KappaResult kr = min_kappa(mz, my, tol);
  out.report.borderline = kr.borderline;
  out.zero = kr.status == KappaStatus::Zero;
  if (kr.status == KappaStatus::Infeasible) {
    Violation v;
    v.constraint = name;
    v.kind = "domination";
    std::ostringstream os;
    os << "direction v with v'M_" << r << "(theta z)v = " << kr.witness_a
       << " (numerically null) but v'M_" << r << "(theta y)v = " << kr.witness_b << " > "
       << kr.tau_rank;
    v.detail = os.str();
    v.witness.assign(kr.witness.data(), kr.witness.data() + kr.witness.size());
    v.y_value = kr.witness_b;
    v.z_value = kr.witness_a;
    out.violation = std::move(v);
    return out;
  }
  out.report.kappa = kr.kappa;
  return out;
}

Verdict aggregate(Method method, int r, std::vector<MatrixConstraint>& results) {
  Verdict v;
  v.method = method;
  v.level = r;
  double kappa = 0.0;
  bool any_borderline = false;
  for (auto& c : results) {
    if (c.violation && !v.violated) v.violated = std::move(c.violation);
    if (c.report.kappa) kappa = std::max(kappa, *c.report.kappa);
    any_borderline = any_borderline || c.report.borderline;
    v.per_constraint.push_back(std::move(c.report));
  }
  if (v.violated) {
    v.status = VerdictStatus::InfeasibleAtLevel;
  } else {
    v.status = VerdictStatus::FeasibleUpToLevel;
    v.kappa_lower = kappa;
  }
  if (any_borderline) {
    v.notes.emplace_back(
        "borderline: a numerical null direction of a z-side matrix carries a small positive "
        "y-side value below the rank tolerance; treated as feasible");
  }
  return v;
}

int schmudgen_top(const MomentSequence& y, const MomentSequence& z, const SemialgebraicSet& k) {
  int deg = 0;
  for (const auto& g : k.generators) deg += std::max(g.degree(), 0);
  return std::min(max_level(y.max_degree(), deg), max_level(z.max_degree(), deg));
}

int putinar_top(const MomentSequence& y, const MomentSequence& z, const SemialgebraicSet& k) {
  int deg = 0;
  for (const auto& g : k.generators) deg = std::max(deg, g.degree());
  return std::min(max_level(y.max_degree(), deg), max_level(z.max_degree(), deg));
}

int handelman_top(const MomentSequence& y, const MomentSequence& z, const SemialgebraicSet& k) {
  int deg = 0;
  for (const auto& g : k.generators) deg = std::max(deg, g.degree());
  const int avail = std::min(y.max_degree(), z.max_degree());
  if (deg <= 0) return avail;  // constant generators never raise the degree
  return avail / deg;
}

int noncompact_top(const MomentSequence& y, const MomentSequence& z) {
  return std::min(max_level(y.max_degree(), 0), max_level(z.max_degree(), 0));
}

}  // namespace

int max_admissible_level(Method method, const MomentSequence& y, const MomentSequence& z,
                         const SemialgebraicSet& k) {
  switch (method) {
    case Method::Schmudgen: return schmudgen_top(y, z, k);
    case Method::Putinar: return putinar_top(y, z, k);
    case Method::Handelman: return handelman_top(y, z, k);
    case Method::Noncompact: return noncompact_top(y, z);
  }
  return -1;
}

Verdict check_schmudgen(const MomentSequence& y, const MomentSequence& z,
                        const SemialgebraicSet& k, int r, const CheckOptions& opts) {
  require_compatible(y, z);
  require_set(y, k);
  const std::size_t m = k.size();
  if (m > kMaxSchmudgenGenerators) {
    throw InvalidArgument("Schmudgen check supports at most " +
                          std::to_string(kMaxSchmudgenGenerators) + " generators, got " +
                          std::to_string(m));
  }
  require_level(r, schmudgen_top(y, z, k), "schmudgen");

  const std::size_t count = std::size_t{1} << m;
  std::vector<MatrixConstraint> results(count);
  parallel_for(count, opts.threads, [&](std::size_t mask) {
    const SparsePoly theta = subset_product_mask(k.generators, mask, k.nvars);
    results[mask] = evaluate_matrix_constraint(y, z, theta, r, subset_name(mask, m), opts.tol);
  });
  return aggregate(Method::Schmudgen, r, results);
}

Verdict check_putinar(const MomentSequence& y, const MomentSequence& z, const SemialgebraicSet& k,
                      int r, const CheckOptions& opts) {
  require_compatible(y, z);
  require_set(y, k);
  if (!k.putinar_ok) {
    throw HypothesisNotAsserted(
        "putinar method requires the set to assert putinar_ok (N - |X|^2 in the quadratic module)");
  }
  require_level(r, putinar_top(y, z, k), "putinar");

  const std::size_t count = k.size() + 1;
  std::vector<MatrixConstraint> results(count);
  parallel_for(count, opts.threads, [&](std::size_t j) {
    const SparsePoly theta = j == 0 ? SparsePoly::constant(k.nvars, 1.0) : k.generators[j - 1];
    results[j] = evaluate_matrix_constraint(y, z, theta, r, "j=" + std::to_string(j), opts.tol);
  });
  return aggregate(Method::Putinar, r, results);
}

Verdict check_handelman(const MomentSequence& y, const MomentSequence& z,
                        const SemialgebraicSet& k, int r, const CheckOptions& opts) {
  require_compatible(y, z);
  require_set(y, k);
  if (!k.normalized || !k.generates_algebra) {
    throw HypothesisNotAsserted(
        "handelman method requires the set to assert both normalized and generates_algebra");
  }
  require_level(r, handelman_top(y, z, k), "handelman");

  const std::size_t m = k.size();
  // Pairs (alpha, beta) in N^m x N^m with |alpha| + |beta| <= r, enumerated as
  // the graded-lex basis of the concatenated exponent vector.
  const MonomialBasis pairs(2 * m, r);
  std::vector<MatrixConstraint> results(pairs.size());
  const double rel = opts.tol.rel_tol;
  parallel_for(pairs.size(), opts.threads, [&](std::size_t idx) {
    const auto& ab = pairs[idx].exponents();
    const MultiIndex alpha(std::vector<int>(ab.begin(), ab.begin() + static_cast<long>(m)));
    const MultiIndex beta(std::vector<int>(ab.begin() + static_cast<long>(m), ab.end()));
    const SparsePoly p = power_product(k.generators, alpha, beta, k.nvars);
    const double a = apply_functional(z, p);
    const double b = apply_functional(y, p);
    const double tau = rel * std::max({1.0, std::abs(a), std::abs(b)});

    MatrixConstraint& out = results[idx];
    out.report.constraint = "alpha=" + alpha.to_string() + ",beta=" + beta.to_string();
    out.report.min_eig_y = b;
    out.report.min_eig_z = a;
    if (b < -tau) {
      std::ostringstream os;
      os << "L_y(g^alpha (1-g)^beta) = " << b << " < -" << tau;
      out.violation = Violation{out.report.constraint, "nonnegativity", os.str(), {}, b, a};
    } else if (a <= tau && b > tau) {
      std::ostringstream os;
      os << "L_z(g^alpha (1-g)^beta) = " << a << " is numerically zero but L_y = " << b;
      out.violation = Violation{out.report.constraint, "domination", os.str(), {}, b, a};
    } else if (a > tau) {
      out.report.kappa = b / a;
    }
  });
  return aggregate(Method::Handelman, r, results);
}

Verdict check_noncompact(const MomentSequence& y, const MomentSequence& z, int r,
                         const CheckOptions& opts) {
  require_compatible(y, z);
  require_level(r, noncompact_top(y, z), "noncompact");
  const SparsePoly one = SparsePoly::constant(y.nvars(), 1.0);
  std::vector<MatrixConstraint> results(1);
  results[0] = evaluate_matrix_constraint(y, z, one, r, "M_r", opts.tol);
  const bool zero = results[0].zero;
  Verdict v = aggregate(Method::Noncompact, r, results);
  v.zero_domination = zero;
  if (zero) v.notes.emplace_back("zero domination: M_r(y) vanishes, kappa = 0");
  v.notes.emplace_back(
      "sufficient condition only: a bounded density follows if the inequalities hold at every "
      "level and z satisfies the Carleman condition, which a truncation cannot decide; see the "
      "Carleman partial sums");
  const int kmax = z.max_degree() / 2;
  if (kmax >= 1) {
    try {
      v.carleman = carleman_partial_sums(z, kmax);
    } catch (const NonpositiveMoment& e) {
      v.notes.emplace_back(std::string("Carleman diagnostic unavailable: ") + e.what());
    }
  }
  return v;
}

Verdict check(Method method, const MomentSequence& y, const MomentSequence& z,
              const SemialgebraicSet& k, int r, const CheckOptions& opts) {
  switch (method) {
    case Method::Schmudgen: return check_schmudgen(y, z, k, r, opts);
    case Method::Putinar: return check_putinar(y, z, k, r, opts);
    case Method::Handelman: return check_handelman(y, z, k, r, opts);
    case Method::Noncompact: return check_noncompact(y, z, r, opts);
  }
  throw InvalidArgument("unknown method");
}

CarlemanDiagnostic carleman_partial_sums(const MomentSequence& z, int kmax) {
  if (kmax < 1) throw InvalidArgument("Kmax must be at least 1");
  if (2 * kmax > z.max_degree()) {
    throw MissingMoment("Carleman partial sums up to Kmax = " + std::to_string(kmax) +
                        " need moments of degree " + std::to_string(2 * kmax) + ", have " +
                        std::to_string(z.max_degree()));
  }
  CarlemanDiagnostic d;
  d.kmax = kmax;
  d.partial_sums.resize(z.nvars());
  for (std::size_t i = 0; i < z.nvars(); ++i) {
    double sum = 0.0;
    for (int k = 1; k <= kmax; ++k) {
      MultiIndex alpha(z.nvars());
      alpha[i] = 2 * k;
      const double m = z[alpha];
      if (!(m > 0.0) || !std::isfinite(m)) {
        throw NonpositiveMoment("L_z(x" + std::to_string(i + 1) + "^" + std::to_string(2 * k) +
                                ") = " + std::to_string(m) + " is not positive");
      }
      sum += std::pow(m, -1.0 / (2.0 * k));
      d.partial_sums[i].push_back(sum);
    }
  }
  return d;
}

std::vector<std::pair<int, Verdict>> kappa_curve(const MomentSequence& y, const MomentSequence& z,
                                                 const SemialgebraicSet& k, Method method,
                                                 int r_max, const CheckOptions& opts) {
  if (r_max < 0) throw InvalidArgument("r_max must be nonnegative");
  const int top = max_admissible_level(method, y, z, k);
  require_level(r_max, top, to_string(method));
  std::vector<std::pair<int, Verdict>> curve;
  std::optional<Verdict> failed;
  for (int r = 0; r <= r_max; ++r) {
    if (failed) {
      Verdict v = *failed;
      v.level = r;
      v.inherited_from = failed->level;
      v.per_constraint.clear();
      v.notes = {"infeasible at level " + std::to_string(failed->level) +
                 "; constraint sets are nested, so every higher level is infeasible"};
      curve.emplace_back(r, std::move(v));
      continue;
    }
    Verdict v = check(method, y, z, k, r, opts);
    if (v.status == VerdictStatus::InfeasibleAtLevel) failed = v;
    curve.emplace_back(r, std::move(v));
  }
  return curve;
}

}  // namespace bdens
