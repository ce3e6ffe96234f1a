#include "bdens/report.hpp"

#include <cstdio>
#include <sstream>

namespace bdens {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string format_kappa(double kappa) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kReportDigits, kappa);
  return buf;
}

json carleman_to_json(const CarlemanDiagnostic& d) {
  json vars = json::array();
  for (const auto& sums : d.partial_sums) vars.push_back(sums);
  return {{"kmax", d.kmax}, {"partial_sums", std::move(vars)}};
}

json verdict_to_json(const Verdict& v) {
  json per = json::array();
  for (const auto& c : v.per_constraint) {
    json e = {{"constraint", c.constraint},
              {"kappa", optional_number(c.kappa)},
              {"min_eig_y", c.min_eig_y},
              {"min_eig_z", c.min_eig_z}};
    if (c.borderline) e["borderline"] = true;
    per.push_back(std::move(e));
  }
  json violated = nullptr;
  if (v.violated) {
    violated = {{"constraint", v.violated->constraint},
                {"kind", v.violated->kind},
                {"detail", v.violated->detail},
                {"y_value", v.violated->y_value},
                {"z_value", v.violated->z_value}};
    if (!v.violated->witness.empty()) violated["witness"] = v.violated->witness;
  }
  json out = {{"method", to_string(v.method)},
              {"level", v.level},
              {"status", to_string(v.status)},
              {"kappa_lower", optional_number(v.kappa_lower)},
              {"violated", std::move(violated)},
              {"per_constraint", std::move(per)}};
  if (!v.notes.empty()) out["notes"] = v.notes;
  if (v.zero_domination) out["zero_domination"] = true;
  if (v.inherited_from) out["inherited_from"] = *v.inherited_from;
  if (v.carleman) out["carleman"] = carleman_to_json(*v.carleman);
  return out;
}

json curve_to_json(const std::vector<std::pair<int, Verdict>>& curve) {
  json levels = json::array();
  for (const auto& [r, v] : curve) levels.push_back(verdict_to_json(v));
  json out = {{"levels", std::move(levels)}};
  if (!curve.empty()) {
    out["method"] = to_string(curve.front().second.method);
    // The Carleman diagnostic depends only on z; report it once.
    if (curve.back().second.carleman) out["carleman"] = carleman_to_json(*curve.back().second.carleman);
  }
  return out;
}

std::string verdict_to_text(const Verdict& v) {
  std::ostringstream os;
  os << "method:  " << to_string(v.method) << '\n';
  os << "level:   " << v.level << '\n';
  os << "status:  " << to_string(v.status) << '\n';
  if (v.kappa_lower) os << "kappa_lower: " << format_kappa(*v.kappa_lower) << '\n';
  if (v.violated) {
    os << "violated: " << v.violated->constraint << " (" << v.violated->kind << ")\n";
    os << "  " << v.violated->detail << '\n';
    if (!v.violated->witness.empty()) {
      os << "  witness: [";
      for (std::size_t i = 0; i < v.violated->witness.size(); ++i) {
        if (i) os << ", ";
        os << format_kappa(v.violated->witness[i]);
      }
      os << "]\n";
    }
  }
  if (!v.per_constraint.empty()) {
    os << "constraints:\n";
    for (const auto& c : v.per_constraint) {
      os << "  " << c.constraint << "  kappa=" << (c.kappa ? format_kappa(*c.kappa) : "-")
         << "  min_eig_y=" << format_kappa(c.min_eig_y) << (c.borderline ? "  (borderline)" : "")
         << '\n';
    }
  }
  if (v.carleman) {
    os << "carleman partial sums (Kmax=" << v.carleman->kmax << "):\n";
    for (std::size_t i = 0; i < v.carleman->partial_sums.size(); ++i) {
      os << "  x" << i + 1 << ": " << format_kappa(v.carleman->partial_sums[i].back()) << '\n';
    }
  }
  for (const auto& n : v.notes) os << "note: " << n << '\n';
  return os.str();
}

std::string curve_to_text(const std::vector<std::pair<int, Verdict>>& curve) {
  std::ostringstream os;
  if (curve.empty()) return {};
  os << "method: " << to_string(curve.front().second.method) << '\n';
  os << "r  status                 kappa_r\n";
  for (const auto& [r, v] : curve) {
    char line[128];
    std::snprintf(line, sizeof line, "%-2d %-22s %s%s\n", r, to_string(v.status),
                  v.kappa_lower ? format_kappa(*v.kappa_lower).c_str() : "-",
                  v.inherited_from ? "  (inherited)" : "");
    os << line;
  }
  const auto& last = curve.back().second;
  if (last.carleman) {
    os << "carleman partial sums (Kmax=" << last.carleman->kmax << "):\n";
    for (std::size_t i = 0; i < last.carleman->partial_sums.size(); ++i) {
      os << "  x" << i + 1 << ":";
      for (double s : last.carleman->partial_sums[i]) os << ' ' << format_kappa(s);
      os << '\n';
    }
  }
  return os.str();
}

json matrix_to_json(const SymMatrix& m) { return m.to_rows(); }

}  // namespace bdens
