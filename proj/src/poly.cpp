#include "bdens/poly.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "bdens/error.hpp"

namespace bdens {

MultiIndex::MultiIndex(std::initializer_list<int> exps) : exps_(exps) {
  for (int e : exps_) {
    if (e < 0) throw InvalidArgument("negative exponent in multi-index");
  }
}

MultiIndex::MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw InvalidArgument("negative exponent in multi-index");
  }
}

MultiIndex MultiIndex::unit(std::size_t nvars, std::size_t var) {
  MultiIndex a(nvars);
  a[var] = 1;
  return a;
}

int MultiIndex::degree() const noexcept { return std::accumulate(exps_.begin(), exps_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionMismatch("multi-index length mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) os << ',';
    os << exps_[i];
  }
  os << ')';
  return os.str();
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  // Larger leading exponent sorts first.
  return a.exponents() > b.exponents();
}

namespace {

void compositions(std::size_t nvars, int remaining, std::size_t pos, MultiIndex& cur,
                  std::vector<MultiIndex>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    compositions(nvars, remaining - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(std::size_t nvars, int max_degree)
    : nvars_(nvars), max_degree_(max_degree) {
  if (max_degree < 0) return;
  elems_.reserve(monomial_count(nvars, max_degree));
  if (nvars == 0) {
    elems_.emplace_back(0);
    return;
  }
  for (int d = 0; d <= max_degree; ++d) {
    MultiIndex cur(nvars);
    compositions(nvars, d, 0, cur, elems_);
  }
}

std::size_t monomial_count(std::size_t nvars, int max_degree) {
  if (max_degree < 0) return 0;
  // C(n + d, n) computed incrementally; exact for desk-scale sizes.
  std::size_t c = 1;
  for (std::size_t k = 1; k <= nvars; ++k) {
    c = c * (static_cast<std::size_t>(max_degree) + k) / k;
  }
  return c;
}

SparsePoly SparsePoly::constant(std::size_t nvars, double c) {
  SparsePoly p(nvars);
  p.add_term(MultiIndex(nvars), c);
  return p;
}

SparsePoly SparsePoly::monomial(const MultiIndex& alpha, double coef) {
  SparsePoly p(alpha.size());
  p.add_term(alpha, coef);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw InvalidArgument("variable index out of range");
  return monomial(MultiIndex::unit(nvars, var));
}

int SparsePoly::degree() const noexcept {
  // Terms are graded-lex sorted, so the last key has maximal degree.
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

double SparsePoly::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

void SparsePoly::check_nvars(const MultiIndex& alpha) const {
  if (alpha.size() != nvars_) {
    throw DimensionMismatch("term index " + alpha.to_string() + " does not have " +
                            std::to_string(nvars_) + " variables");
  }
}

void SparsePoly::add_term(const MultiIndex& alpha, double coef) {
  check_nvars(alpha);
  auto [it, inserted] = terms_.try_emplace(alpha, coef);
  if (!inserted) it->second += coef;
  if (std::abs(it->second) < kZeroCoefficient) terms_.erase(it);
}

double SparsePoly::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw DimensionMismatch("evaluation point has wrong dimension");
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double m = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < alpha[i]; ++k) m *= point[i];
    }
    sum += m;
  }
  return sum;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& other) {
  if (other.nvars_ != nvars_) throw DimensionMismatch("polynomial variable count mismatch");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& other) {
  if (other.nvars_ != nvars_) throw DimensionMismatch("polynomial variable count mismatch");
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(double s) {
  if (std::abs(s) < kZeroCoefficient) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (std::abs(it->second) < kZeroCoefficient) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [alpha, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const double mag = std::abs(c);
    const bool is_const = alpha.degree() == 0;
    if (is_const || mag != 1.0) os << mag;
    bool need_star = !is_const && mag != 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      if (need_star) os << '*';
      os << 'x' << (i + 1);
      if (alpha[i] > 1) os << '^' << alpha[i];
      need_star = true;
    }
  }
  return os.str();
}

SparsePoly poly_mul(const SparsePoly& p, const SparsePoly& q) {
  if (p.nvars() != q.nvars()) throw DimensionMismatch("poly_mul: variable count mismatch");
  SparsePoly r(p.nvars());
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) r.add_term(a + b, ca * cb);
  }
  return r;
}

SparsePoly poly_pow(const SparsePoly& p, int k) {
  if (k < 0) throw InvalidArgument("negative polynomial power");
  SparsePoly r = SparsePoly::constant(p.nvars(), 1.0);
  for (int i = 0; i < k; ++i) r = poly_mul(r, p);
  return r;
}

SparsePoly subset_product(std::span<const SparsePoly> g, std::span<const std::size_t> subset,
                          std::size_t nvars) {
  SparsePoly r = SparsePoly::constant(nvars, 1.0);
  for (std::size_t j : subset) {
    if (j >= g.size()) throw InvalidArgument("generator index out of range");
    r = poly_mul(r, g[j]);
  }
  return r;
}

SparsePoly subset_product_mask(std::span<const SparsePoly> g, unsigned long mask,
                               std::size_t nvars) {
  SparsePoly r = SparsePoly::constant(nvars, 1.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (mask & (1UL << j)) r = poly_mul(r, g[j]);
  }
  return r;
}

SparsePoly power_product(std::span<const SparsePoly> g, const MultiIndex& alpha,
                         const MultiIndex& beta, std::size_t nvars) {
  if (alpha.size() != g.size() || beta.size() != g.size()) {
    throw DimensionMismatch("power_product: exponent vectors must have one entry per generator");
  }
  const SparsePoly one = SparsePoly::constant(nvars, 1.0);
  SparsePoly r = one;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (alpha[j] > 0) r = poly_mul(r, poly_pow(g[j], alpha[j]));
    if (beta[j] > 0) r = poly_mul(r, poly_pow(one - g[j], beta[j]));
  }
  return r;
}

}  // namespace bdens
