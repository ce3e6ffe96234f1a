// bounded-density: generate moment files, check bounded-density certificates
// and sweep levels.
//
// Exit codes: 0 feasible at the requested level(s), 1 infeasible, 2 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bdens/certificates.hpp"
#include "bdens/density.hpp"
#include "bdens/error.hpp"
#include "bdens/matrices.hpp"
#include "bdens/moments.hpp"
#include "bdens/oracle.hpp"
#include "bdens/report.hpp"

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitError = 2;

struct MomentsArgs {
  std::string measure = "lebesgue";
  std::vector<std::string> boxes;
  std::size_t nvars = 1;
  std::vector<double> point;
  std::vector<std::string> densities;
  int degree = -1;
  std::size_t points = 0;
  std::string label;
  std::string output;
};

struct CheckArgs {
  std::string y_path;
  std::string z_path;
  std::string set_path;
  std::string method;
  int level = -1;
  int r_max = -1;
  double rel_tol = bdens::TolPolicy{}.rel_tol;
  double rank_tol = bdens::TolPolicy{}.rank_tol;
  unsigned threads = 1;
  std::string format = "text";
  std::string output;
  std::string dump_matrices;
};

std::vector<std::pair<double, double>> parse_boxes(const std::vector<std::string>& specs) {
  std::vector<std::pair<double, double>> out;
  for (const auto& spec : specs) {
    std::stringstream sides(spec);
    std::string side;
    while (std::getline(sides, side, ';')) {
      const auto comma = side.find(',');
      if (comma == std::string::npos) {
        throw bdens::InvalidArgument("--box expects lo,hi (got \"" + side + "\")");
      }
      try {
        out.emplace_back(std::stod(side.substr(0, comma)), std::stod(side.substr(comma + 1)));
      } catch (const std::exception&) {
        throw bdens::InvalidArgument("--box expects numeric lo,hi (got \"" + side + "\")");
      }
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw bdens::Error("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

int run_moments(const MomentsArgs& a) {
  if (a.degree < 0) throw bdens::InvalidArgument("--degree must be nonnegative");
  bdens::MomentSequence seq;
  if (a.measure == "dirac") {
    if (!a.densities.empty()) throw bdens::InvalidArgument("--density is not supported with dirac");
    if (a.point.empty()) throw bdens::InvalidArgument("dirac needs --point");
    seq = bdens::dirac_moments(a.point, a.degree);
  } else {
    bdens::ReferenceMeasure mu;
    if (a.measure == "lebesgue") {
      auto bounds = parse_boxes(a.boxes);
      if (bounds.empty()) throw bdens::InvalidArgument("lebesgue needs --box");
      mu = bdens::ReferenceMeasure::lebesgue(std::move(bounds));
    } else if (a.measure == "gaussian") {
      mu = bdens::ReferenceMeasure::gaussian(a.nvars);
    } else {
      throw bdens::InvalidArgument("unknown --measure \"" + a.measure +
                                   "\" (lebesgue, gaussian or dirac)");
    }
    if (a.densities.empty()) {
      seq = mu.moments(a.degree);
    } else {
      std::vector<bdens::DensitySpec> parts;
      for (const auto& d : a.densities) parts.push_back(bdens::parse_density(d, mu.nvars()));
      const auto h = bdens::combine_densities(parts);
      bdens::QuadratureOptions qo;
      qo.points = a.points;
      auto q = bdens::quadrature_moments(h, mu, a.degree, qo);
      if (q.negative_samples > 0) {
        std::cerr << "warning: density is negative at " << q.negative_samples
                  << " quadrature nodes; the fixture is not a valid density\n";
      }
      seq = std::move(q.moments);
    }
  }
  if (!a.label.empty()) seq.set_label(a.label);
  bdens::write_moments(seq, a.output);
  return kExitFeasible;
}

bdens::CheckOptions check_options(const CheckArgs& a) {
  bdens::CheckOptions o;
  o.tol.rel_tol = a.rel_tol;
  o.tol.rank_tol = a.rank_tol;
  o.threads = a.threads;
  return o;
}

struct Inputs {
  bdens::Method method;
  bdens::MomentSequence y;
  bdens::MomentSequence z;
  bdens::SemialgebraicSet k;
};

Inputs load_inputs(const CheckArgs& a) {
  const auto method = bdens::parse_method(a.method);
  if (!method) {
    throw bdens::InvalidArgument("unknown --method \"" + a.method +
                                 "\" (schmudgen, putinar, handelman, noncompact)");
  }
  Inputs in{*method, bdens::read_moments(a.y_path), bdens::read_moments(a.z_path), {}};
  if (in.y.nvars() != in.z.nvars()) {
    throw bdens::DimensionMismatch("y and z files have different nvars");
  }
  if (*method != bdens::Method::Noncompact) {
    if (a.set_path.empty()) throw bdens::InvalidArgument("--set is required for compact methods");
    in.k = bdens::read_set(a.set_path);
  } else {
    in.k.nvars = in.y.nvars();
  }
  return in;
}

void dump_matrices(const Inputs& in, int r, const std::string& path) {
  nlohmann::json out = nlohmann::json::array();
  std::vector<std::pair<std::string, bdens::SparsePoly>> shifts{
      {"1", bdens::SparsePoly::constant(in.y.nvars(), 1.0)}};
  if (in.method != bdens::Method::Noncompact && in.method != bdens::Method::Handelman) {
    for (std::size_t j = 0; j < in.k.size(); ++j) {
      shifts.emplace_back("g" + std::to_string(j + 1), in.k.generators[j]);
    }
  }
  for (const auto& [name, theta] : shifts) {
    if (r > bdens::max_level(in.y, theta) || r > bdens::max_level(in.z, theta)) continue;
    out.push_back({{"theta", name},
                   {"level", r},
                   {"M_y", bdens::matrix_to_json(bdens::localizing_matrix(in.y, theta, r))},
                   {"M_z", bdens::matrix_to_json(bdens::localizing_matrix(in.z, theta, r))}});
  }
  emit(out.dump(2), path);
}

int run_check(const CheckArgs& a) {
  const Inputs in = load_inputs(a);
  if (!a.dump_matrices.empty()) dump_matrices(in, a.level, a.dump_matrices);
  const auto v = bdens::check(in.method, in.y, in.z, in.k, a.level, check_options(a));
  emit(a.format == "json" ? bdens::verdict_to_json(v).dump(2) : bdens::verdict_to_text(v), a.output);
  return v.status == bdens::VerdictStatus::FeasibleUpToLevel ? kExitFeasible : kExitInfeasible;
}

int run_curve(const CheckArgs& a) {
  const Inputs in = load_inputs(a);
  const auto curve = bdens::kappa_curve(in.y, in.z, in.k, in.method, a.r_max, check_options(a));
  emit(a.format == "json" ? bdens::curve_to_json(curve).dump(2) : bdens::curve_to_text(curve),
       a.output);
  for (const auto& [r, v] : curve) {
    if (v.status == bdens::VerdictStatus::InfeasibleAtLevel) return kExitInfeasible;
  }
  return kExitFeasible;
}

unsigned default_threads() {
  if (const char* env = std::getenv("BD_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

void add_check_flags(CLI::App* cmd, CheckArgs& a) {
  cmd->add_option("--y", a.y_path, "Moment file of the candidate sequence y")->required();
  cmd->add_option("--z", a.z_path, "Moment file of the reference sequence z")->required();
  cmd->add_option("--set", a.set_path, "Semialgebraic set file (compact methods)");
  cmd->add_option("--method", a.method, "schmudgen | putinar | handelman | noncompact")->required();
  cmd->add_option("--rel-tol", a.rel_tol, "Relative PSD / linear tolerance");
  cmd->add_option("--rank-tol", a.rank_tol, "Relative numerical-rank tolerance");
  cmd->add_option("--threads", a.threads, "Worker threads for constraint evaluation (env BD_THREADS)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", a.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("-o,--output", a.output, "Write the report to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify or refute bounded densities of truncated moment sequences"};
  app.name("bounded-density");
  app.require_subcommand(1);

  MomentsArgs margs;
  auto* moments = app.add_subcommand("moments", "Write a moment file for a built-in measure");
  moments->add_option("--measure", margs.measure, "lebesgue | gaussian | dirac");
  moments->add_option("--box", margs.boxes, "Interval lo,hi per variable (repeat, or join with ';')");
  moments->add_option("--nvars", margs.nvars, "Number of variables (gaussian)");
  moments->add_option("--point", margs.point, "Atom location (dirac)")->delimiter(',');
  moments->add_option("--density", margs.densities,
                      "poly:<expr> | rational:<num>;<den> | box-indicator:<lo,hi;...>*<c>");
  moments->add_option("--degree", margs.degree, "Maximum moment degree")->required();
  moments->add_option("--points", margs.points, "Gauss points per axis for non-polynomial densities");
  moments->add_option("--label", margs.label, "Label stored in the file");
  moments->add_option("-o,--output", margs.output, "Output moment file")->required();

  CheckArgs cargs;
  cargs.threads = default_threads();
  auto* check = app.add_subcommand("check", "Run one certificate at one level");
  add_check_flags(check, cargs);
  check->add_option("--level", cargs.level, "Truncation level r")->required();
  check->add_option("--dump-matrices", cargs.dump_matrices,
                    "Write the level-r moment/localizing matrices as JSON to this file");

  CheckArgs vargs;
  vargs.threads = default_threads();
  auto* curve = app.add_subcommand("curve", "Sweep levels 0..r_max");
  add_check_flags(curve, vargs);
  curve->add_option("--r-max", vargs.r_max, "Highest level")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*moments) return run_moments(margs);
    if (*check) return run_check(cargs);
    if (*curve) return run_curve(vargs);
  } catch (const bdens::DegreeShortfall& e) {
    std::cerr << "error: " << e.what() << "\nmax admissible level: " << e.max_level() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
