#include <fstream>
#include <set>
#include <sstream>

#include "bdens/error.hpp"
#include "bdens/moments.hpp"
#include "json.hpp"

namespace bdens {

using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedFile("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw MalformedFile(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw MalformedFile(std::string("bad field \"") + key + "\": " + e.what());
  }
}

MultiIndex parse_alpha(const json& j, std::size_t nvars) {
  if (!j.is_array()) throw MalformedFile("alpha must be an array of integers");
  std::vector<int> exps;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 0) {
      throw MalformedFile("alpha entries must be nonnegative integers");
    }
    exps.push_back(e.get<int>());
  }
  if (exps.size() != nvars) {
    throw MalformedFile("alpha of length " + std::to_string(exps.size()) + ", expected " +
                        std::to_string(nvars));
  }
  return MultiIndex(std::move(exps));
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedFile(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

MomentSequence moments_from_json(const std::string& text) {
  const json doc = parse_document(text);
  const int nvars = require<int>(doc, "nvars");
  const int max_degree = require<int>(doc, "max_degree");
  if (nvars < 0 || max_degree < 0) throw MalformedFile("nvars and max_degree must be nonnegative");
  std::string label = doc.contains("label") ? require<std::string>(doc, "label") : std::string{};
  const json& entries = doc.contains("moments") ? doc.at("moments") : json();
  if (!entries.is_array()) throw MalformedFile("\"moments\" must be an array");

  MomentSequence seq(static_cast<std::size_t>(nvars), max_degree, std::move(label));
  std::set<MultiIndex, GradedLexLess> seen;
  for (const auto& entry : entries) {
    MultiIndex alpha = parse_alpha(entry.contains("alpha") ? entry.at("alpha") : json(),
                                   static_cast<std::size_t>(nvars));
    if (alpha.degree() > max_degree) {
      throw MalformedFile("moment " + alpha.to_string() + " exceeds max_degree");
    }
    const json& v = entry.contains("value") ? entry.at("value") : json();
    if (!v.is_number()) throw MalformedFile("moment " + alpha.to_string() + " has no numeric value");
    if (!seen.insert(alpha).second) throw DuplicateIndex("duplicate moment " + alpha.to_string());
    seq.set(alpha, v.get<double>());
  }
  for (const auto& alpha : seq.basis()) {
    if (!seen.contains(alpha)) {
      throw IncompleteShell("missing moment " + alpha.to_string() + " (max_degree " +
                            std::to_string(max_degree) + ")");
    }
  }
  return seq;
}

std::string moments_to_json(const MomentSequence& seq) {
  json entries = json::array();
  const auto values = seq.values();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    entries.push_back({{"alpha", seq.basis()[i].exponents()}, {"value", values[i]}});
  }
  json doc = {{"nvars", seq.nvars()},
              {"max_degree", seq.max_degree()},
              {"label", seq.label()},
              {"moments", std::move(entries)}};
  return doc.dump(2);
}

MomentSequence read_moments(const std::filesystem::path& path) {
  return moments_from_json(slurp(path));
}

void write_moments(const MomentSequence& seq, const std::filesystem::path& path) {
  spit(path, moments_to_json(seq));
}

SemialgebraicSet set_from_json(const std::string& text) {
  const json doc = parse_document(text);
  SemialgebraicSet set;
  const int nvars = require<int>(doc, "nvars");
  if (nvars < 0) throw MalformedFile("nvars must be nonnegative");
  set.nvars = static_cast<std::size_t>(nvars);
  const json& gens = doc.contains("generators") ? doc.at("generators") : json::array();
  if (!gens.is_array()) throw MalformedFile("\"generators\" must be an array");
  for (const auto& g : gens) {
    SparsePoly p(set.nvars);
    const json& terms = g.contains("terms") ? g.at("terms") : json();
    if (!terms.is_array()) throw MalformedFile("generator needs a \"terms\" array");
    for (const auto& t : terms) {
      MultiIndex alpha = parse_alpha(t.contains("alpha") ? t.at("alpha") : json(), set.nvars);
      const json& c = t.contains("coef") ? t.at("coef") : json();
      if (!c.is_number()) throw MalformedFile("term " + alpha.to_string() + " has no numeric coef");
      p.add_term(alpha, c.get<double>());
    }
    set.generators.push_back(std::move(p));
  }
  set.normalized = doc.value("normalized", false);
  set.generates_algebra = doc.value("generates_algebra", false);
  set.putinar_ok = doc.value("putinar_ok", false);
  return set;
}

std::string set_to_json(const SemialgebraicSet& set) {
  json gens = json::array();
  for (const auto& g : set.generators) {
    json terms = json::array();
    for (const auto& [alpha, c] : g.terms()) {
      terms.push_back({{"alpha", alpha.exponents()}, {"coef", c}});
    }
    gens.push_back({{"terms", std::move(terms)}});
  }
  json doc = {{"nvars", set.nvars},
              {"generators", std::move(gens)},
              {"normalized", set.normalized},
              {"generates_algebra", set.generates_algebra},
              {"putinar_ok", set.putinar_ok}};
  return doc.dump(2);
}

SemialgebraicSet read_set(const std::filesystem::path& path) { return set_from_json(slurp(path)); }

void write_set(const SemialgebraicSet& set, const std::filesystem::path& path) {
  spit(path, set_to_json(set));
}

}  // namespace bdens
