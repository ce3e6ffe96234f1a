#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bdens/certificates.hpp"
#include "json.hpp"

namespace bdens {

// Significant digits used for kappa in text reports.
inline constexpr int kReportDigits = 12;

nlohmann::json verdict_to_json(const Verdict& v);
nlohmann::json curve_to_json(const std::vector<std::pair<int, Verdict>>& curve);
nlohmann::json carleman_to_json(const CarlemanDiagnostic& d);

std::string format_kappa(double kappa);

std::string verdict_to_text(const Verdict& v);
std::string curve_to_text(const std::vector<std::pair<int, Verdict>>& curve);

// Dense row-major dump of a matrix (debugging aid).
nlohmann::json matrix_to_json(const SymMatrix& m);

}  // namespace bdens
