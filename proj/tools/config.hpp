#pragma once

// Flat key=value experiment configuration for the command-line tool.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanlab/asymptotics.hpp"
#include "spanlab/family.hpp"
#include "spanlab/spectrum.hpp"

namespace spanlab::cli {

using Config = std::map<std::string, std::string>;

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "family", "n",      "h",     "d",        "phat",     "seed",   "model",  "m",
      "p",      "trials", "gamma", "K",        "format",   "emit-csv", "workers", "n-grid",
      "m-frac", "method", "host-graph", "skip-stochastic"};
  return keys;
}

struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems(std::move(problems)) {}

  std::vector<std::string> problems;

  static std::string join(const std::vector<std::string>& ps) {
    std::string s;
    for (const auto& p : ps) s += (s.empty() ? "" : "; ") + p;
    return s;
  }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Parses `key = value` lines; '#' starts a comment, values may be quoted.
inline Config parse_config_text(const std::string& text) {
  Config cfg;
  std::vector<std::string> problems;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (!known_keys().contains(key)) problems.push_back(key + ": unknown key");
    else cfg[key] = value;
  }
  if (!problems.empty()) throw ConfigError(problems);
  return cfg;
}

inline Config read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open " + path});
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

// Collects every problem with the configuration before reporting any.
class Validator {
 public:
  explicit Validator(const Config& cfg) : cfg_(cfg) {}

  bool has(const std::string& key) const { return cfg_.contains(key); }

  void problem(const std::string& key, const std::string& msg) { problems_.push_back(key + ": " + msg); }

  std::optional<std::string> string(const std::string& key, bool required) {
    if (auto it = cfg_.find(key); it != cfg_.end()) return it->second;
    if (required) problem(key, "required");
    return std::nullopt;
  }

  std::optional<std::int64_t> integer(const std::string& key, bool required,
                                      std::int64_t lo = INT64_MIN, std::int64_t hi = INT64_MAX) {
    auto s = string(key, required);
    if (!s) return std::nullopt;
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(*s, &pos);
      if (pos != s->size()) throw std::invalid_argument("trailing");
      if (v < lo || v > hi) {
        problem(key, "value " + *s + " outside " + std::to_string(lo) + ".." + std::to_string(hi));
        return std::nullopt;
      }
      return v;
    } catch (const std::logic_error&) {
      problem(key, "expected an integer, got '" + *s + "'");
      return std::nullopt;
    }
  }

  std::optional<std::uint64_t> unsigned_integer(const std::string& key, bool required) {
    auto s = string(key, required);
    if (!s) return std::nullopt;
    try {
      std::size_t pos = 0;
      if (!s->empty() && (*s)[0] == '-') throw std::invalid_argument("negative");
      const unsigned long long v = std::stoull(*s, &pos);
      if (pos != s->size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::logic_error&) {
      problem(key, "expected a non-negative integer, got '" + *s + "'");
      return std::nullopt;
    }
  }

  std::optional<double> real(const std::string& key, bool required, double lo, double hi) {
    auto s = string(key, required);
    if (!s) return std::nullopt;
    try {
      std::size_t pos = 0;
      const double v = std::stod(*s, &pos);
      if (pos != s->size()) throw std::invalid_argument("trailing");
      if (!(v >= lo && v <= hi)) {
        std::ostringstream msg;
        msg << "value " << *s << " outside [" << lo << ", " << hi << "]";
        problem(key, msg.str());
        return std::nullopt;
      }
      return v;
    } catch (const std::logic_error&) {
      problem(key, "expected a number, got '" + *s + "'");
      return std::nullopt;
    }
  }

  std::optional<std::vector<int>> int_list(const std::string& key, bool required) {
    auto s = string(key, required);
    if (!s) return std::nullopt;
    std::vector<int> out;
    std::stringstream ss(*s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      try {
        std::size_t pos = 0;
        const int v = std::stoi(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("trailing");
        out.push_back(v);
      } catch (const std::logic_error&) {
        problem(key, "expected a comma-separated integer list, got '" + *s + "'");
        return std::nullopt;
      }
    }
    if (out.empty()) {
      problem(key, "empty list");
      return std::nullopt;
    }
    return out;
  }

  // Runs `make` and records a domain error under `key` instead of throwing.
  template <class F>
  auto guarded(const std::string& key, F&& make) -> std::optional<decltype(make())> {
    try {
      return make();
    } catch (const DomainError& e) {
      problem(key, e.what());
    } catch (const InputError& e) {
      problem(key, e.what());
    }
    return std::nullopt;
  }

  void finish() const {
    if (!problems_.empty()) throw ConfigError(problems_);
  }

 private:
  const Config& cfg_;
  std::vector<std::string> problems_;
};

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"all-h-edge",      "random-subfamily", "degree-seq",
                                              "triangle-free",   "hamilton",         "dir-hamilton",
                                              "triangle-factor", "dir-triangle-factor"};
  return names;
}

// Family at vertex count n from the family keys (n itself comes from the caller).
inline std::optional<FamilySpec> family_from(Validator& v, std::optional<std::int64_t> n) {
  const auto name = v.string("family", true);
  if (!name) return std::nullopt;
  const auto& names = family_names();
  if (std::find(names.begin(), names.end(), *name) == names.end()) {
    v.problem("family", "unknown family '" + *name + "'");
    return std::nullopt;
  }
  std::optional<std::int64_t> h;
  std::optional<double> phat;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<int>> d;
  if (*name == "all-h-edge" || *name == "triangle-free" || *name == "random-subfamily")
    h = v.integer("h", true, 0);
  if (*name == "random-subfamily") {
    phat = v.real("phat", true, 0.0, 1.0);
    seed = v.unsigned_integer("seed", true);
  }
  if (*name == "degree-seq") d = v.int_list("d", true);
  if (!n) return std::nullopt;
  const int nn = static_cast<int>(*n);
  return v.guarded("family", [&]() -> FamilySpec {
    if (*name == "all-h-edge") return FamilySpec::all_h_edge(nn, h.value_or(0));
    if (*name == "random-subfamily")
      return FamilySpec::random_subfamily(nn, h.value_or(0), phat.value_or(0), seed.value_or(0));
    if (*name == "degree-seq") {
      if (!d) throw DomainError("degree sequence missing");
      if (static_cast<int>(d->size()) != nn)
        throw DomainError("d has " + std::to_string(d->size()) + " entries but n = " + std::to_string(nn));
      return FamilySpec::degree_sequence(DegreeSequence(*d));
    }
    if (*name == "triangle-free") return FamilySpec::triangle_free(nn, h.value_or(0));
    if (*name == "hamilton") return FamilySpec::hamilton(nn);
    if (*name == "dir-hamilton") return FamilySpec::directed_hamilton(nn);
    if (*name == "triangle-factor") return FamilySpec::triangle_factor(nn);
    return FamilySpec::directed_triangle_factor(nn);
  });
}

inline std::optional<ModelKind> model_kind_from(Validator& v) {
  const auto tag = v.string("model", true);
  if (!tag) return std::nullopt;
  if (*tag == "gnm") return ModelKind::gnm;
  if (*tag == "gnp") return ModelKind::gnp;
  if (*tag == "dnm") return ModelKind::dnm;
  if (*tag == "dnp") return ModelKind::dnp;
  v.problem("model", "expected gnm, gnp, dnm or dnp, got '" + *tag + "'");
  return std::nullopt;
}

// Model from `model` plus exactly one of m / p, matching the tag.
inline std::optional<ModelParams> model_from(Validator& v, std::optional<std::int64_t> n) {
  const auto kind = model_kind_from(v);
  if (!kind) return std::nullopt;
  const bool edges = *kind == ModelKind::gnm || *kind == ModelKind::dnm;
  const std::string want = edges ? "m" : "p";
  const std::string other = edges ? "p" : "m";
  if (v.has(other)) v.problem(other, "not used by model " + std::string(to_string(*kind)) + "; give " + want);
  std::optional<std::int64_t> m;
  std::optional<double> p;
  if (edges) m = v.integer("m", true, 0);
  else p = v.real("p", true, 0.0, 1.0);
  if (!n || (edges && !m) || (!edges && !p)) return std::nullopt;
  const int nn = static_cast<int>(*n);
  return v.guarded(want, [&]() -> ModelParams {
    switch (*kind) {
      case ModelKind::gnm: return ModelParams::gnm(nn, *m);
      case ModelKind::gnp: return ModelParams::gnp(nn, *p);
      case ModelKind::dnm: return ModelParams::dnm(nn, *m);
      case ModelKind::dnp: return ModelParams::dnp(nn, *p);
    }
    throw DomainError("unknown model");
  });
}

enum class Format { json, csv };

inline Format format_from(Validator& v) {
  const auto f = v.string("format", false);
  if (!f || *f == "json") return Format::json;
  if (*f == "csv") return Format::csv;
  v.problem("format", "expected json or csv, got '" + *f + "'");
  return Format::json;
}

inline std::optional<SpectrumMethod> method_from(Validator& v) {
  const auto m = v.string("method", false);
  if (!m) return SpectrumMethod::automatic;
  for (auto candidate : {SpectrumMethod::automatic, SpectrumMethod::pair_enumeration,
                         SpectrumMethod::fixed_representative, SpectrumMethod::closed_form,
                         SpectrumMethod::recursion})
    if (*m == to_string(candidate)) return candidate;
  v.problem("method", "unknown spectrum method '" + *m + "'");
  return std::nullopt;
}

}  // namespace spanlab::cli
