// spanlab: intersection spectra, expectations and random-graph experiments
// for families of spanning subgraphs.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "json.hpp"
#include "spanlab/spanlab.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace spanlab;
using namespace spanlab::cli;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapability = 3;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json optional_number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

json fraction(const std::optional<Rational>& r) {
  return r ? json(to_fraction_string(*r)) : json(nullptr);
}

json model_json(const ModelParams& m) {
  json j;
  j["model"] = to_string(m.kind());
  j["n"] = m.n();
  j["U"] = m.universe();
  j["m"] = m.m();
  j["p"] = m.p();
  return j;
}

struct Subcommand {
  CLI::App* app = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
  bool skip_stochastic = false;

  Config config() const {
    Config cfg = config_path.empty() ? Config{} : read_config_file(config_path);
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) cfg[key] = values.at(key);
    if (skip_stochastic) cfg["skip-stochastic"] = "true";
    return cfg;
  }
};

const std::map<std::string, std::string>& key_help() {
  static const std::map<std::string, std::string> help{
      {"family", "family name: all-h-edge, random-subfamily, degree-seq, triangle-free, hamilton, "
                 "dir-hamilton, triangle-factor, dir-triangle-factor"},
      {"n", "number of vertices"},
      {"h", "edge count (all-h-edge, triangle-free, random-subfamily)"},
      {"d", "degree sequence as a comma list (degree-seq)"},
      {"phat", "retention probability (random-subfamily)"},
      {"seed", "64-bit seed (random-subfamily membership and Monte Carlo trials)"},
      {"model", "random graph model: gnm, gnp, dnm, dnp"},
      {"m", "edge count for gnm/dnm"},
      {"p", "edge probability for gnp/dnp"},
      {"trials", "number of Monte Carlo trials"},
      {"gamma", "upper end of the condition-(b) window (default depends on the family)"},
      {"K", "condition-(a) window multiplier (default 4)"},
      {"format", "json (default) or csv"},
      {"emit-csv", "write per-trial rows trial,count,T to this file"},
      {"workers", "worker threads (results do not depend on this)"},
      {"n-grid", "comma list of vertex counts"},
      {"m-frac", "edge fraction c for gnm/dnm trends: m = floor(c U)"},
      {"method", "spectrum method: automatic, pair-enumeration, fixed-representative, closed-form, "
                 "recursion"},
      {"host-graph", "host graph file: first line 'n m', then m lines 'u v'"},
  };
  return help;
}

Subcommand& add_subcommand(CLI::App& app, std::map<std::string, Subcommand>& subs,
                           const std::string& name, const std::string& description,
                           const std::vector<std::string>& keys) {
  auto& sub = subs[name];
  sub.app = app.add_subcommand(name, description);
  for (const auto& key : keys) {
    sub.values[key];
    sub.options[key] = sub.app->add_option("--" + key, sub.values[key], key_help().at(key));
  }
  sub.app->add_option("--config", sub.config_path, "key = value file; flags override its entries");
  return sub;
}

const std::vector<std::string> kFamilyKeys{"family", "n", "h", "d", "phat", "seed"};

std::vector<std::string> with(std::vector<std::string> base, const std::vector<std::string>& more) {
  base.insert(base.end(), more.begin(), more.end());
  return base;
}

// ---- subcommands ----------------------------------------------------------

int run_spectrum(const Config& cfg) {
  Validator v(cfg);
  const auto n = v.integer("n", true, 1, kMaxVertices);
  const auto spec = family_from(v, n);
  const auto method = method_from(v);
  const auto format = format_from(v);
  v.finish();
  const auto s = spectrum_exact(*spec, *method);
  if (format == Format::csv) {
    const auto r = ratio_series(s);
    std::cout << "j,f_j,r_j_num,r_j_den\n";
    for (std::size_t j = 0; j < s.f.size(); ++j) {
      std::cout << j << ',' << s.f[j] << ',';
      if (r.r[j])
        std::cout << numerator(*r.r[j]) << ',' << denominator(*r.r[j]);
      else
        std::cout << ',';
      std::cout << '\n';
    }
    return kExitOk;
  }
  json out;
  out["family"] = spec->name();
  out["n"] = spec->n();
  out["f"] = json::array();
  for (const auto& x : s.f) out["f"].push_back(to_decimal(x));
  out["method"] = to_string(s.method);
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_ratios(const Config& cfg) {
  Validator v(cfg);
  const auto n = v.integer("n", true, 1, kMaxVertices);
  const auto spec = family_from(v, n);
  const auto method = method_from(v);
  const auto format = format_from(v);
  v.finish();
  const auto s = spectrum_exact(*spec, *method);
  const auto r = ratio_series(s);
  if (format == Format::csv) std::cout << "j,r_j_num,r_j_den,r_j,predicted\n";
  json rows = json::array();
  for (std::size_t j = 1; j < s.f.size(); ++j) {
    const double predicted = predicted_ratio(*spec, static_cast<std::int64_t>(j));
    if (format == Format::csv) {
      std::cout << j << ',';
      if (r.r[j])
        std::cout << numerator(*r.r[j]) << ',' << denominator(*r.r[j]) << ',' << to_double(*r.r[j]);
      else
        std::cout << ",,";
      std::cout << ',' << predicted << '\n';
      continue;
    }
    json row;
    row["j"] = j;
    row["r"] = fraction(r.r[j]);
    row["r_value"] = r.r[j] ? number(to_double(*r.r[j])) : json(nullptr);
    row["predicted"] = number(predicted);
    rows.push_back(row);
  }
  if (format == Format::json) {
    json out;
    out["family"] = spec->name();
    out["n"] = spec->n();
    out["method"] = to_string(s.method);
    out["ratios"] = rows;
    std::cout << out.dump(2) << '\n';
  }
  return kExitOk;
}

json expectation_json(const ExpectationReport& e) {
  json out;
  out["family"] = e.family;
  out["model"] = model_json(e.model);
  out["h"] = e.h;
  out["mu_log"] = number(e.mu_log);
  out["mu_exact"] = fraction(e.mu_exact);
  out["lambda_log"] = number(e.lambda_log);
  out["beta"] = number(e.beta);
  out["beta_limit"] = optional_number(e.beta_limit);
  out["eq_mu_terms"] = {{"log_size", number(e.eq_mu_terms.log_size)},
                        {"log_power", number(e.eq_mu_terms.log_power)},
                        {"correction", number(e.eq_mu_terms.correction)},
                        {"log_total", number(e.eq_mu_terms.log_total())}};
  out["too_few_edges"] = e.too_few_edges;
  return out;
}

void reject_csv(Validator& v, Format f, const std::string& sub) {
  if (f == Format::csv) v.problem("format", "csv output is not available for " + sub);
}

int run_expect(const Config& cfg) {
  Validator v(cfg);
  const auto n = v.integer("n", true, 1, kMaxVertices);
  const auto spec = family_from(v, n);
  const auto model = model_from(v, n);
  reject_csv(v, format_from(v), "expect");
  v.finish();
  std::cout << expectation_json(expectation(*spec, *model)).dump(2) << '\n';
  return kExitOk;
}

int run_conditions(const Config& cfg) {
  Validator v(cfg);
  const auto n = v.integer("n", true, 1, kMaxVertices);
  const auto spec = family_from(v, n);
  const auto model = model_from(v, n);
  const auto gamma = v.integer("gamma", false, 0);
  const auto K = v.real("K", false, 1e-9, 1e9);
  reject_csv(v, format_from(v), "conditions");
  v.finish();
  const auto rep = condition_report(*spec, *model, gamma, K.value_or(4.0));
  json out;
  out["family"] = rep.family;
  out["model"] = model_json(rep.model);
  out["h"] = rep.h;
  out["gamma"] = rep.gamma;
  out["K"] = rep.K;
  json a = json::array(), b = json::array();
  for (const auto& [j, dev] : rep.deviations) a.push_back({{"j", j}, {"deviation", optional_number(dev)}});
  for (const auto& [j, ok] : rep.ratio_window)
    b.push_back({{"j", j}, {"holds", ok ? json(*ok) : json(nullptr)}});
  out["a_deviations"] = a;
  out["b_ratio_window"] = b;
  out["c_tail_mass"] = to_decimal(rep.tail_mass);
  out["c_reference_exact"] = fraction(rep.tail_reference_exact);
  out["c_reference_log"] = number(rep.tail_reference_log);
  out["d_mu_exact"] = fraction(rep.mu_exact);
  out["d_mu_log"] = number(rep.mu_log);
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

json bound_json(const BoundCheck& c) {
  json j;
  j["l"] = c.type1;
  j["t"] = c.triangles;
  j["in_window"] = c.in_window;
  j["evaluated"] = c.evaluated;
  j["lower"] = c.in_window ? json(to_fraction_string(c.lower)) : json(nullptr);
  j["upper"] = c.in_window ? json(to_fraction_string(c.upper)) : json(nullptr);
  j["ratio"] = fraction(c.ratio);
  j["holds"] = c.holds;
  return j;
}

int run_bounds(const Config& cfg) {
  Validator v(cfg);
  const auto n = v.integer("n", true, 1, kMaxVertices);
  const auto spec = family_from(v, n);
  const auto format = format_from(v);
  v.finish();
  json out;
  out["family"] = spec->name();
  out["n"] = spec->n();
  out["audits"] = json::array();
  std::vector<std::string> csv_rows;
  auto csv_bound = [&](const std::string& lemma, const BoundCheck& c) {
    std::ostringstream row;
    row << lemma << ',' << c.type1 << ',' << c.triangles << ',' << c.in_window << ',' << c.evaluated
        << ',' << (c.ratio ? to_fraction_string(*c.ratio) : "") << ','
        << (c.in_window ? to_fraction_string(c.lower) : "") << ','
        << (c.in_window ? to_fraction_string(c.upper) : "") << ',' << c.holds;
    csv_rows.push_back(row.str());
  };
  if (spec->is<family::TriangleFactor>()) {
    const auto ts = spec->n() <= kTriangleFactorEnumerationMaxN ? triangle_factor_spectrum(spec->n())
                                                                : triangle_factor_spectrum_dp(spec->n());
    const auto audit = audit_triangle_factor_bounds(ts);
    json table = json::array();
    for (const auto& [key, value] : ts.table)
      table.push_back({{"l", key.first}, {"type2_edges", key.second}, {"count", to_decimal(value)}});
    json single = json::array(), triple = json::array();
    for (const auto& c : audit.single) {
      single.push_back(bound_json(c));
      csv_bound("single", c);
    }
    for (const auto& c : audit.triple) {
      triple.push_back(bound_json(c));
      csv_bound("triple", c);
    }
    out["audits"].push_back({{"name", "triangle-factor switching"},
                             {"table", table},
                             {"single", single},
                             {"triple", triple},
                             {"evaluated", audit.evaluated()},
                             {"holds", audit.holds()}});
  } else if (spec->is<family::HamiltonCycle>()) {
    const auto rep = kappa_upper_bound_check(spec->n());
    json rows = json::array();
    for (const auto& r : rep.rows) {
      rows.push_back({{"j", r.j},
                      {"kappa", to_decimal(r.kappa)},
                      {"contraction_bound", fraction(r.contraction_bound)},
                      {"coarse_bound", to_decimal(r.coarse_bound)},
                      {"contraction_holds", r.contraction_holds},
                      {"coarse_holds", r.coarse_holds}});
      std::ostringstream row;
      row << "kappa," << r.j << ",," << 1 << ',' << 1 << ',' << r.kappa << ",,"
          << r.coarse_bound << ',' << (r.contraction_holds && r.coarse_holds);
      csv_rows.push_back(row.str());
    }
    out["audits"].push_back({{"name", "hamilton kappa"}, {"rows", rows}, {"holds", rep.holds()}});
  }
  if (format == Format::csv) {
    std::cout << "lemma,l,t,in_window,evaluated,ratio,lower,upper,holds\n";
    for (const auto& row : csv_rows) std::cout << row << '\n';
  } else {
    std::cout << out.dump(2) << '\n';
  }
  return kExitOk;
}

int run_simulate(const Config& cfg) {
  Validator v(cfg);
  const auto n = v.integer("n", true, 1, kMaxVertices);
  const auto spec = family_from(v, n);
  const auto model = model_from(v, n);
  const auto trials = v.integer("trials", true, 1, 100'000'000);
  const auto seed = v.unsigned_integer("seed", true);
  const auto workers = v.integer("workers", false, 1, 1024);
  const auto csv_path = v.string("emit-csv", false);
  reject_csv(v, format_from(v), "simulate");
  v.finish();
  const auto rep = simulate(*spec, *model, *trials, *seed, static_cast<int>(workers.value_or(1)));
  json out;
  out["family"] = spec->name();
  out["model"] = model_json(*model);
  out["trials"] = rep.trials;
  out["seed"] = std::to_string(rep.seed);
  out["zero_fraction"] = rep.zero_fraction;
  out["mean"] = to_fraction_string(rep.mean);
  out["expected"] = number(rep.expected);
  out["expected_exact"] = fraction(rep.expected_exact);
  out["mean_ratio"] = number(rep.mean_ratio);
  out["mean_standard_error"] = number(rep.mean_standard_error);
  out["count_variance"] = number(rep.count_variance);
  out["beta"] = number(rep.beta);
  out["stats"] = rep.stats ? json{{"mean", number(rep.stats->mean)},
                                  {"variance", number(rep.stats->variance)},
                                  {"ks", number(rep.stats->ks)}}
                           : json(nullptr);
  out["counts"] = json::array();
  for (const auto& c : rep.counts) out["counts"].push_back(to_decimal(c));
  if (csv_path) {
    std::ofstream csv(*csv_path);
    if (!csv) throw InputError("cannot write " + *csv_path);
    csv << "trial,count,T\n";
    std::size_t t = 0;
    const bool with_t = !rep.normalized_logs.empty();
    for (std::size_t i = 0; i < rep.counts.size(); ++i) {
      csv << i << ',' << rep.counts[i] << ',';
      if (with_t && rep.counts[i] > 0) csv << rep.normalized_logs[t++];
      csv << '\n';
    }
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_trend(const Config& cfg) {
  Validator v(cfg);
  const auto grid = v.int_list("n-grid", true);
  if (grid)
    for (int n : *grid)
      if (n < 1 || n > kMaxVertices) v.problem("n-grid", "vertex count " + std::to_string(n) + " outside 1..64");
  if (v.has("family") && cfg.at("family") == "degree-seq")
    v.problem("family", "degree-seq ties d to one n; trends need an n-indexed family");
  std::vector<FamilySpec> specs;
  if (grid)
    for (int n : *grid) {
      const auto spec = family_from(v, n);
      if (spec) specs.push_back(*spec);
    }
  else
    family_from(v, std::nullopt);
  const auto kind = model_kind_from(v);
  std::optional<double> c;
  if (kind) {
    const bool edges = *kind == ModelKind::gnm || *kind == ModelKind::dnm;
    if (edges) {
      c = v.real("m-frac", true, 0.0, 1.0);
      if (v.has("p")) v.problem("p", "not used by edge-count models; give m-frac");
    } else {
      c = v.real("p", true, 0.0, 1.0);
      if (v.has("m-frac")) v.problem("m-frac", "not used by probability models; give p");
    }
    if (v.has("m")) v.problem("m", "trends take m-frac or p, not a fixed m");
  }
  const auto trials = v.integer("trials", true, 1, 100'000'000);
  const auto seed = v.unsigned_integer("seed", true);
  const auto workers = v.integer("workers", false, 1, 1024);
  const auto format = format_from(v);
  v.finish();
  std::map<int, FamilySpec> by_n;
  for (const auto& s : specs) by_n.emplace(s.n(), s);
  const auto rep = concentration_trend([&](int n) { return by_n.at(n); }, *grid, *kind, *c, *trials,
                                       *seed, static_cast<int>(workers.value_or(1)));
  if (format == Format::csv) {
    std::cout << "n,m,p,expected,exceed_0.5,exceed_0.25\n";
    for (const auto& r : rep.rows)
      std::cout << r.n << ',' << r.model.m() << ',' << r.model.p() << ',' << r.expected << ','
                << r.exceed_half << ',' << r.exceed_quarter << '\n';
    return kExitOk;
  }
  json out;
  out["family"] = specs.front().name();
  out["model"] = to_string(*kind);
  out["fraction"] = *c;
  out["trials"] = *trials;
  out["seed"] = std::to_string(*seed);
  out["rows"] = json::array();
  for (const auto& r : rep.rows)
    out["rows"].push_back({{"n", r.n},
                           {"m", r.model.m()},
                           {"p", r.model.p()},
                           {"expected", number(r.expected)},
                           {"exceed_0.5", r.exceed_half},
                           {"exceed_0.25", r.exceed_quarter}});
  out["non_increasing_0.5"] = rep.non_increasing_half;
  out["non_increasing_0.25"] = rep.non_increasing_quarter;
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int run_verify(const Config& cfg) {
  Validator v(cfg);
  VerifyOptions opt;
  if (auto w = v.integer("workers", false, 1, 1024)) opt.workers = static_cast<int>(*w);
  if (auto s = v.unsigned_integer("seed", false)) opt.seed = *s;
  if (auto skip = v.string("skip-stochastic", false)) opt.stochastic = *skip != "true";
  const auto format = format_from(v);
  v.finish();
  json results = json::array();
  if (format == Format::csv) std::cout << "id,passed,name,detail\n";
  bool all = true;
  for (const auto& r : run_verification(opt)) {
    all &= r.passed;
    if (format == Format::csv) {
      std::cout << r.id << ',' << (r.passed ? "true" : "false") << ",\"" << r.name << "\",\""
                << r.detail << "\"\n";
    }
    results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (format == Format::json) {
    json out;
    out["results"] = results;
    out["passed"] = all;
    std::cout << out.dump(2) << '\n';
  }
  return all ? kExitOk : kExitVerifyFailed;
}

int run_count(const Config& cfg) {
  Validator v(cfg);
  const auto path = v.string("host-graph", true);
  std::optional<std::ifstream> file;
  if (path) {
    file.emplace(*path);
    if (!*file) v.problem("host-graph", "cannot open " + *path);
  }
  const auto name = v.string("family", true);
  reject_csv(v, format_from(v), "count");
  v.finish();
  const bool directed = *name == "dir-hamilton" || *name == "dir-triangle-factor";
  json out;
  if (directed) {
    const auto host = read_digraph(*file);
    Validator fv(cfg);
    const auto spec = family_from(fv, host.n());
    fv.finish();
    out["family"] = spec->name();
    out["n"] = host.n();
    out["count"] = to_decimal(count_in_host(*spec, host));
  } else {
    const auto host = read_graph(*file);
    Validator fv(cfg);
    const auto spec = family_from(fv, host.n());
    fv.finish();
    out["family"] = spec->name();
    out["n"] = host.n();
    out["count"] = to_decimal(count_in_host(*spec, host));
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intersection spectra, expectations and Monte Carlo experiments for spanning "
               "subgraph families in random graphs"};
  // --h is the edge-count key, so help is long-form only
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  std::map<std::string, Subcommand> subs;

  add_subcommand(app, subs, "spectrum",
                 "Exact intersection spectrum f_j. CSV columns: j,f_j,r_j_num,r_j_den",
                 with(kFamilyKeys, {"method", "format"}));
  add_subcommand(app, subs, "ratios",
                 "Ratio series r_j = f_j/f_{j-1} with leading-order predictions. CSV columns: "
                 "j,r_j_num,r_j_den,r_j,predicted",
                 with(kFamilyKeys, {"method", "format"}));
  add_subcommand(app, subs, "expect", "Expectation report (mu, lambda, beta) for a family and model",
                 with(kFamilyKeys, {"model", "m", "p", "format"}));
  add_subcommand(app, subs, "conditions", "Finite-n report on the ratio conditions (a)-(d)",
                 with(kFamilyKeys, {"model", "m", "p", "gamma", "K", "format"}));
  add_subcommand(app, subs, "bounds",
                 "Switching-bound audits for triangle factors and Hamilton cycles. CSV columns: "
                 "lemma,l,t,in_window,evaluated,ratio,lower,upper,holds",
                 with(kFamilyKeys, {"format"}));
  add_subcommand(app, subs, "simulate",
                 "Monte Carlo counts in a random (di)graph model. --emit-csv columns: trial,count,T",
                 with(kFamilyKeys, {"model", "m", "p", "trials", "workers", "emit-csv", "format"}));
  add_subcommand(app, subs, "trend",
                 "Exceedance P(|X/E[X]-1| > eps) over an n-grid. CSV columns: "
                 "n,m,p,expected,exceed_0.5,exceed_0.25",
                 {"family", "h", "phat", "seed", "n-grid", "model", "m", "m-frac", "p", "trials",
                  "workers", "format"});
  auto& verify = add_subcommand(app, subs, "verify",
                                "Run the acceptance battery; exit 1 on any failure. CSV columns: "
                                "id,passed,name,detail",
                                {"seed", "workers", "format"});
  verify.app->add_flag("--skip-stochastic", verify.skip_stochastic,
                       "skip the Monte Carlo criteria");
  add_subcommand(app, subs, "count", "Count family members inside a host graph file",
                 {"family", "h", "d", "phat", "seed", "host-graph", "format"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::map<std::string, int (*)(const Config&)> runners{
      {"spectrum", run_spectrum}, {"ratios", run_ratios},     {"expect", run_expect},
      {"conditions", run_conditions}, {"bounds", run_bounds}, {"simulate", run_simulate},
      {"trend", run_trend},       {"verify", run_verify},     {"count", run_count}};
  for (auto& [name, sub] : subs) {
    if (!sub.app->parsed()) continue;
    try {
      return runners.at(name)(sub.config());
    } catch (const ConfigError& e) {
      std::cerr << "usage error:\n";
      for (const auto& p : e.problems) std::cerr << "  " << p << '\n';
      return kExitUsage;
    } catch (const CapabilityError& e) {
      std::cerr << "capability error: " << e.what() << '\n';
      return kExitCapability;
    } catch (const DomainError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const InputError& e) {
      std::cerr << "input error: " << e.what() << '\n';
      return kExitUsage;
    }
  }
  return kExitUsage;
}
