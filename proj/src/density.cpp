#include "bdens/density.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "bdens/error.hpp"

namespace bdens {

DensitySpec DensitySpec::polynomial(SparsePoly p) {
  DensitySpec d;
  d.kind_ = DensityKind::Polynomial;
  d.nvars_ = p.nvars();
  d.description_ = "poly:" + p.to_string();
  d.num_ = std::move(p);
  return d;
}

DensitySpec DensitySpec::piecewise(std::size_t nvars, std::vector<DensityBox> boxes) {
  for (const auto& b : boxes) {
    if (b.bounds.size() != nvars) throw DimensionMismatch("density box has wrong dimension");
    for (const auto& [lo, hi] : b.bounds) {
      if (!(lo < hi)) throw InvalidArgument("density box has an empty side");
    }
  }
  DensitySpec d;
  d.kind_ = DensityKind::PiecewiseConstant;
  d.nvars_ = nvars;
  d.boxes_ = std::move(boxes);
  d.description_ = "piecewise-constant (" + std::to_string(d.boxes_.size()) + " boxes)";
  return d;
}

DensitySpec DensitySpec::rational(SparsePoly numerator, SparsePoly denominator) {
  if (numerator.nvars() != denominator.nvars()) {
    throw DimensionMismatch("rational density: numerator and denominator differ in nvars");
  }
  if (denominator.is_zero()) throw InvalidArgument("rational density: zero denominator");
  DensitySpec d;
  d.kind_ = DensityKind::Rational;
  d.nvars_ = numerator.nvars();
  d.description_ = "rational:(" + numerator.to_string() + ")/(" + denominator.to_string() + ")";
  d.num_ = std::move(numerator);
  d.den_ = std::move(denominator);
  return d;
}

DensitySpec DensitySpec::function(std::size_t nvars,
                                  std::function<double(std::span<const double>)> fn,
                                  std::string description) {
  DensitySpec d;
  d.kind_ = DensityKind::Function;
  d.nvars_ = nvars;
  d.fn_ = std::move(fn);
  d.description_ = std::move(description);
  return d;
}

double DensitySpec::operator()(std::span<const double> x) const {
  switch (kind_) {
    case DensityKind::Polynomial: return num_.evaluate(x);
    case DensityKind::Rational: return num_.evaluate(x) / den_.evaluate(x);
    case DensityKind::Function: return fn_(x);
    case DensityKind::PiecewiseConstant: {
      double h = 0.0;
      for (const auto& b : boxes_) {
        bool inside = true;
        for (std::size_t i = 0; i < nvars_ && inside; ++i) {
          inside = x[i] >= b.bounds[i].first && x[i] <= b.bounds[i].second;
        }
        if (inside) h += b.value;
      }
      return h;
    }
  }
  return 0.0;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  SparsePoly parse() {
    SparsePoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("polynomial \"" + std::string(text_) + "\" at offset " +
                          std::to_string(pos_) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  bool starts_primary() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || c == 'x' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
  }

  SparsePoly expr() {
    SparsePoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  SparsePoly term() {
    SparsePoly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = poly_mul(acc, unary());
      } else if (accept('/')) {
        const SparsePoly d = unary();
        if (d.degree() > 0 || d.is_zero()) fail("division is only allowed by nonzero constants");
        acc *= 1.0 / d.coefficient(MultiIndex(nvars_));
      } else if (starts_primary()) {
        acc = poly_mul(acc, unary());  // implicit product, e.g. 2x or x(1-x)
      } else {
        return acc;
      }
    }
  }

  SparsePoly unary() {
    if (accept('-')) return unary() * -1.0;
    if (accept('+')) return unary();
    return power();
  }

  SparsePoly power() {
    SparsePoly base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer");
      int k = 0;
      std::from_chars(text_.data() + start, text_.data() + pos_, k);
      base = poly_pow(base, k);
    }
    return base;
  }

  SparsePoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly p = expr();
      if (!accept(')')) fail("missing ')'");
      return p;
    }
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::size_t var = 1;
      if (start == pos_) {
        if (nvars_ != 1) fail("bare 'x' is only allowed for univariate densities; use x1..xn");
      } else {
        std::from_chars(text_.data() + start, text_.data() + pos_, var);
      }
      if (var < 1 || var > nvars_) fail("variable x" + std::to_string(var) + " out of range");
      return SparsePoly::variable(nvars_, var - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(text_.substr(pos_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("bad number");
      pos_ += static_cast<std::size_t>(end - rest.c_str());
      return SparsePoly::constant(nvars_, v);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

double parse_number(std::string_view s, const char* what) {
  const std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  std::string_view tail(end, str.c_str() + str.size() - end);
  while (!tail.empty() && std::isspace(static_cast<unsigned char>(tail.front()))) tail.remove_prefix(1);
  if (end == str.c_str() || !tail.empty()) {
    throw InvalidArgument(std::string("bad ") + what + " \"" + str + "\"");
  }
  return v;
}

DensitySpec parse_box_indicator(std::string_view body, std::size_t nvars) {
  double scale = 1.0;
  std::string_view bounds = body;
  // "·" (U+00B7) or "*" separates the bounds from the scale.
  if (auto p = body.find("\xC2\xB7"); p != std::string_view::npos) {
    bounds = body.substr(0, p);
    scale = parse_number(body.substr(p + 2), "box-indicator scale");
  } else if (auto q = body.find('*'); q != std::string_view::npos) {
    bounds = body.substr(0, q);
    scale = parse_number(body.substr(q + 1), "box-indicator scale");
  }
  DensityBox box;
  box.value = scale;
  while (!bounds.empty()) {
    const auto semi = bounds.find(';');
    const std::string_view side = bounds.substr(0, semi);
    const auto comma = side.find(',');
    if (comma == std::string_view::npos) {
      throw InvalidArgument("box-indicator side \"" + std::string(side) + "\" must be lo,hi");
    }
    box.bounds.emplace_back(parse_number(side.substr(0, comma), "box bound"),
                            parse_number(side.substr(comma + 1), "box bound"));
    if (semi == std::string_view::npos) break;
    bounds.remove_prefix(semi + 1);
  }
  if (box.bounds.size() != nvars) {
    throw InvalidArgument("box-indicator has " + std::to_string(box.bounds.size()) +
                          " sides, expected " + std::to_string(nvars));
  }
  return DensitySpec::piecewise(nvars, {box});
}

}  // namespace

SparsePoly parse_polynomial(std::string_view text, std::size_t nvars) {
  return PolyParser(text, nvars).parse();
}

DensitySpec parse_density(std::string_view text, std::size_t nvars) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("density \"" + std::string(text) +
                          "\" needs a kind prefix (poly:, rational:, box-indicator:)");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (kind == "poly") return DensitySpec::polynomial(parse_polynomial(body, nvars));
  if (kind == "rational") {
    const auto semi = body.find(';');
    if (semi == std::string_view::npos) {
      throw InvalidArgument("rational density must be rational:<numerator>;<denominator>");
    }
    return DensitySpec::rational(parse_polynomial(body.substr(0, semi), nvars),
                                 parse_polynomial(body.substr(semi + 1), nvars));
  }
  if (kind == "box-indicator") return parse_box_indicator(body, nvars);
  throw InvalidArgument("unknown density kind \"" + std::string(kind) + "\"");
}

DensitySpec combine_densities(std::span<const DensitySpec> parts) {
  if (parts.empty()) throw InvalidArgument("no densities to combine");
  if (parts.size() == 1) return parts.front();
  const DensityKind kind = parts.front().kind();
  const std::size_t nvars = parts.front().nvars();
  for (const auto& p : parts) {
    if (p.kind() != kind || p.nvars() != nvars) {
      throw InvalidArgument("only densities of the same kind and dimension can be combined");
    }
  }
  if (kind == DensityKind::Polynomial) {
    SparsePoly sum(nvars);
    for (const auto& p : parts) sum += p.numerator();
    return DensitySpec::polynomial(std::move(sum));
  }
  if (kind == DensityKind::PiecewiseConstant) {
    std::vector<DensityBox> boxes;
    for (const auto& p : parts) boxes.insert(boxes.end(), p.boxes().begin(), p.boxes().end());
    return DensitySpec::piecewise(nvars, std::move(boxes));
  }
  throw InvalidArgument("rational and callable densities cannot be combined");
}

}  // namespace bdens
