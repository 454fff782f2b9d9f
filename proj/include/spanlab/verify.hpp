#pragma once

// The acceptance battery: exact identities, bound audits and seeded
// statistical checks, one result per criterion.

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "spanlab/asymptotics.hpp"
#include "spanlab/families.hpp"
#include "spanlab/montecarlo.hpp"
#include "spanlab/spectrum.hpp"
#include "spanlab/triangle_factor.hpp"

namespace spanlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool stochastic = true;  // criteria 9-12
  int workers = 1;
  std::uint64_t seed = 20260415;
};

namespace verify {

inline CriterionResult directed_hamilton_recursion() {
  CriterionResult r{1, "directed Hamilton recursion identity", true, ""};
  std::ostringstream out;
  for (int n = 3; n <= 8; ++n) {
    const auto brute = spectrum_pairwise(FamilySpec::directed_hamilton(n));
    const BigInt size = factorial(n - 1);
    for (int j = 0; j <= n; ++j) {
      const BigInt expected = size * dir_hamilton_fj(n, j);
      if (brute.f[j] != expected) {
        r.passed = false;
        out << "n=" << n << " j=" << j << ": " << brute.f[j] << " != " << expected << "; ";
      }
    }
  }
  r.detail = r.passed ? "n=3..8, all j exact" : out.str();
  return r;
}

inline CriterionResult all_h_edge_closed_form() {
  CriterionResult r{2, "all-h-edge closed form", true, ""};
  std::ostringstream out;
  int cases = 0;
  for (int n = 1; n <= 5; ++n)
    for (std::int64_t h = 0; h <= std::min<std::int64_t>(4, pair_count(n)); ++h) {
      const auto brute = spectrum_pairwise(FamilySpec::all_h_edge(n, h));
      for (std::int64_t j = 0; j <= h; ++j)
        if (brute.f[j] != s1_closed_form_fj(n, h, j)) {
          r.passed = false;
          out << "n=" << n << " h=" << h << " j=" << j << "; ";
        }
      ++cases;
    }
  const auto fixture = spectrum_pairwise(FamilySpec::all_h_edge(4, 2)).f;
  if (fixture != std::vector<BigInt>{90, 120, 15}) {
    r.passed = false;
    out << "fixture n=4 h=2 differs; ";
  }
  r.detail = r.passed ? std::to_string(cases) + " (n,h) cases and fixture (90,120,15)" : out.str();
  return r;
}

inline CriterionResult spectrum_partition() {
  CriterionResult r{3, "spectrum partition sum f_j = |S|^2", true, ""};
  std::ostringstream out;
  std::vector<std::pair<FamilySpec, SpectrumMethod>> cases;
  cases.emplace_back(FamilySpec::degree_sequence(DegreeSequence({1, 1, 1, 1})),
                     SpectrumMethod::pair_enumeration);
  cases.emplace_back(FamilySpec::triangle_free(5, 4), SpectrumMethod::pair_enumeration);
  for (int n = 3; n <= 8; ++n)
    cases.emplace_back(FamilySpec::hamilton(n), SpectrumMethod::fixed_representative);
  for (int n = 2; n <= 8; ++n) {
    cases.emplace_back(FamilySpec::directed_hamilton(n), SpectrumMethod::fixed_representative);
    cases.emplace_back(FamilySpec::directed_hamilton(n), SpectrumMethod::recursion);
  }
  for (int n : {6, 9, 12, 15})
    cases.emplace_back(FamilySpec::triangle_factor(n), SpectrumMethod::fixed_representative);
  for (int n : {6, 9})
    cases.emplace_back(FamilySpec::directed_triangle_factor(n), SpectrumMethod::fixed_representative);
  for (const auto& [spec, method] : cases) {
    const auto s = spectrum_exact(spec, method);
    const BigInt size = *cardinality(spec).exact;
    if (s.total() != size * size) {
      r.passed = false;
      out << spec.name() << " n=" << spec.n() << " (" << to_string(method) << "); ";
    }
  }
  r.detail = r.passed ? std::to_string(cases.size()) + " family/size/method cases" : out.str();
  return r;
}

inline CriterionResult triangle_factor_fixture() {
  CriterionResult r{4, "triangle-factor fixture n=6", true, ""};
  const auto s = spectrum_fixed_representative(FamilySpec::triangle_factor(6));
  const std::vector<BigInt> expected{0, 0, 90, 0, 0, 0, 10};
  const auto two = triangle_factor_spectrum(6);
  const std::map<std::pair<int, int>, BigInt> table{{{2, 0}, 90}, {{0, 6}, 10}};
  r.passed = s.f == expected && two.table == table && triangle_factor_spectrum_dp(6).table == table;
  r.detail = r.passed ? "f_2=90, f_6=10; table {(2,0):90,(0,6):10}" : "fixture mismatch";
  return r;
}

inline CriterionResult switching_bounds() {
  CriterionResult r{5, "switching bounds", true, ""};
  std::ostringstream out;
  const auto ts = triangle_factor_spectrum(15);
  const auto audit = audit_triangle_factor_bounds(ts);
  std::size_t in_window = 0;
  for (const auto& c : audit.single) in_window += c.in_window;
  for (const auto& c : audit.triple) in_window += c.in_window;
  if (!audit.holds()) {
    r.passed = false;
    out << "n=15 triangle-factor sandwich violated; ";
  }
  const BigInt size = *cardinality(FamilySpec::triangle_factor(15)).exact;
  if (ts.total() != size * size) {
    r.passed = false;
    out << "n=15 table total differs from |S|^2; ";
  }
  for (int n = 3; n <= 8; ++n) {
    const auto kappa = kappa_upper_bound_check(n);
    for (const auto& row : kappa.rows)
      if (!row.coarse_holds) {
        r.passed = false;
        out << "kappa n=" << n << " j=" << row.j << "; ";
      }
  }
  if (r.passed)
    out << "n=15: " << audit.single.size() + audit.triple.size() << " (l,t) cells, " << in_window
        << " inside the windows, " << audit.evaluated() << " evaluated, all hold; kappa n=3..8 holds";
  r.detail = out.str();
  return r;
}

inline CriterionResult directed_hamilton_ratio_limit() {
  CriterionResult r{6, "directed Hamilton ratio limit n=200", true, ""};
  const int n = 200;
  const auto row = dir_hamilton_row(n);
  double worst = 0.0;
  for (int j = 1; j <= 20; ++j) {
    const double dev = std::abs(to_double(Rational(row[j] * j, row[j - 1]) - 1));
    worst = std::max(worst, dev);
  }
  r.passed = worst <= 0.02;
  std::ostringstream out;
  out << "max |j r_j - 1| over j=1..20 is " << worst;
  r.detail = out.str();
  return r;
}

inline CriterionResult falling_factorial_accuracy() {
  CriterionResult r{7, "falling-factorial ratio accuracy", true, ""};
  std::ostringstream out;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (int n : {50, 100, 200}) {
    const std::int64_t U = pair_count(n);
    const std::int64_t m = U / 2;
    const auto top = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(m))));
    for (std::int64_t l = 1; l <= top; ++l) {
      const auto f = falling_factorial_ratio(U, m, l);
      const double err = std::abs(log_rational(f.exact) - f.log_asymptotic);
      const double ld = static_cast<double>(l), md = static_cast<double>(m);
      const double bound = ld * ld * ld / (md * md) + 2 * ld / static_cast<double>(U);
      worst_slack = std::min(worst_slack, bound - err);
      if (err > bound) {
        r.passed = false;
        out << "n=" << n << " l=" << l << " err " << err << " > " << bound << "; ";
      }
    }
  }
  if (r.passed) out << "n in {50,100,200}, all l <= sqrt(m); min slack " << worst_slack;
  r.detail = out.str();
  return r;
}

inline CriterionResult expectation_identity() {
  CriterionResult r{8, "expectation identity Hamilton n=4 m=4", true, ""};
  const auto spec = FamilySpec::hamilton(4);
  const auto e = expectation(spec, ModelParams::gnm(4, 4));
  BigInt total = 0, hosts = 0;
  for_each_h_edge_graph(4, 4, [&](std::uint64_t, std::span<const Row> rows) {
    total += count_in_host(spec, LabeledGraph::from_rows(4, {rows.begin(), rows.end()}));
    ++hosts;
  });
  r.passed = e.mu_exact && *e.mu_exact == Rational(1, 5) && hosts == 15 && total == 3 &&
             *e.mu_exact * hosts == total;
  r.detail = "mu=" + (e.mu_exact ? to_fraction_string(*e.mu_exact) : std::string("none")) +
             ", hosts=" + hosts.str() + ", total count=" + total.str();
  return r;
}

inline CriterionResult gnm_concentration(const VerifyOptions& opt) {
  CriterionResult r{9, "G(n,m) concentration", true, ""};
  const auto sim = simulate(FamilySpec::hamilton(12), ModelParams::gnm(12, 50), 2000, opt.seed,
                            opt.workers);
  const auto trend = concentration_trend([](int n) { return FamilySpec::hamilton(n); }, {10, 12, 14},
                                         ModelKind::gnm, 0.75, 2000, opt.seed, opt.workers);
  r.passed = sim.mean_z() <= 3.0 && trend.non_increasing_half;
  std::ostringstream out;
  out << "mu=" << sim.expected << " mean=" << to_double(sim.mean) << " z=" << sim.mean_z()
      << "; exceedance(0.5) over n=10,12,14:";
  for (const auto& row : trend.rows) out << ' ' << row.exceed_half;
  r.detail = out.str();
  return r;
}

// Shared tolerances for the log-normal criteria.
// Calibration at 20000 trials, seed 20260415, p = 0.7:
//   Hamilton n=10: mean -0.158 var 1.703 KS 0.080 zero 0.0046
//   Hamilton n=14: mean -0.086 var 1.397 KS 0.056 zero 0.0001
//   directed n=8:  mean -0.086 var 1.507 KS 0.057 zero 0.0040
//   directed n=12: mean -0.046 var 1.244 KS 0.036 zero 0
// The variance of T still exceeds 1 by more than 0.35 for Hamilton cycles at n=14.
struct LogNormalTolerances {
  double mean = 0.25;
  double variance = 0.35;
  double ks = 0.1;
  double zero_fraction = 0.01;
};

inline CriterionResult log_normal_shape(int id, const std::string& name, const FamilySpec& big,
                                        const ModelParams& big_model, const FamilySpec& small,
                                        const ModelParams& small_model, const VerifyOptions& opt) {
  CriterionResult r{id, name, true, ""};
  const LogNormalTolerances tol;
  const auto a = simulate(big, big_model, 2000, opt.seed, opt.workers);
  const auto b = simulate(small, small_model, 2000, opt.seed, opt.workers);
  if (!a.stats || !b.stats) {
    r.passed = false;
    r.detail = "no nonzero counts";
    return r;
  }
  const auto& s = *a.stats;
  const auto& t = *b.stats;
  r.passed = std::abs(s.mean) <= tol.mean && std::abs(s.variance - 1) <= tol.variance &&
             s.ks <= tol.ks && a.zero_fraction <= tol.zero_fraction &&
             std::abs(s.mean) < std::abs(t.mean) &&
             std::abs(s.variance - 1) < std::abs(t.variance - 1);
  std::ostringstream out;
  out << "n=" << big.n() << ": mean(T)=" << s.mean << " var(T)=" << s.variance << " KS=" << s.ks
      << " zero=" << a.zero_fraction << "; n=" << small.n() << ": mean(T)=" << t.mean
      << " var(T)=" << t.variance;
  r.detail = out.str();
  return r;
}

inline CriterionResult random_subfamily_sampling(const VerifyOptions& opt) {
  CriterionResult r{12, "random-subfamily spectrum sampling", true, ""};
  const int n = 5;
  const std::int64_t h = 3;
  const double phat = 0.5;
  const int seeds = 200;
  const std::int64_t N = pair_count(n);
  std::vector<std::vector<double>> samples(static_cast<std::size_t>(h + 1));
  for (int s = 0; s < seeds; ++s) {
    const auto spec = FamilySpec::random_subfamily(n, h, phat, opt.seed + static_cast<std::uint64_t>(s));
    const auto spectrum = spectrum_pairwise(spec);
    const BigInt size = *cardinality(spec).exact;
    for (std::int64_t j = 0; j <= h; ++j) {
      BigInt off = spectrum.f[j];
      if (j == h) off -= size;  // diagonal pairs (H, H)
      samples[j].push_back(off.convert_to<double>());
    }
  }
  std::ostringstream out;
  for (std::int64_t j = 0; j <= h; ++j) {
    BigInt m_off = s1_closed_form_fj(n, h, j);
    if (j == h) m_off -= binomial(N, h);
    const double expected = phat * phat * m_off.convert_to<double>();
    const auto st = sample_stats(samples[j]);
    const double se = std::sqrt(st.variance / seeds);
    const double diff = std::abs(st.mean - expected);
    const bool ok = se == 0.0 ? diff == 0.0 : diff <= 4 * se;
    r.passed &= ok;
    out << "j=" << j << ": mean " << st.mean << " vs " << expected;
    if (se > 0) out << " (" << diff / se << " SE)";
    out << "; ";
  }
  r.detail = out.str();
  return r;
}

inline CriterionResult mckay_sanity() {
  CriterionResult r{13, "McKay main term for cubic graphs", true, ""};
  std::ostringstream out;
  double ratio6 = 0, ratio8 = 0;
  for (int n : {6, 8}) {
    const auto d = DegreeSequence::regular(n, 3);
    const BigInt exact = count_degree_subgraphs(LabeledGraph::complete(n), d);
    const double ratio = std::exp(mckay_log_main_term(d) - log_big(exact));
    (n == 6 ? ratio6 : ratio8) = ratio;
    out << "n=" << n << ": exact " << exact << ", main term/exact " << ratio << "; ";
  }
  const BigInt exact6 = count_degree_subgraphs(LabeledGraph::complete(6), DegreeSequence::regular(6, 3));
  auto within2 = [](double x) { return x >= 0.5 && x <= 2.0; };
  r.passed = exact6 == 70 && within2(ratio6) && within2(ratio8) &&
             std::abs(std::log(ratio8)) < std::abs(std::log(ratio6));
  r.detail = out.str();
  return r;
}

}  // namespace verify

// Runs the battery; stochastic criteria only when opt.stochastic is set.
inline std::vector<CriterionResult> run_verification(
    const VerifyOptions& opt = {},
    const std::function<void(const CriterionResult&)>& on_result = {}) {
  std::vector<std::pair<int, std::function<CriterionResult()>>> checks{
      {1, verify::directed_hamilton_recursion},
      {2, verify::all_h_edge_closed_form},
      {3, verify::spectrum_partition},
      {4, verify::triangle_factor_fixture},
      {5, verify::switching_bounds},
      {6, verify::directed_hamilton_ratio_limit},
      {7, verify::falling_factorial_accuracy},
      {8, verify::expectation_identity},
  };
  if (opt.stochastic) {
    checks.emplace_back(9, [&] { return verify::gnm_concentration(opt); });
    checks.emplace_back(10, [&] {
      return verify::log_normal_shape(10, "log-normal shape, Hamilton cycles in G(n,p)",
                                      FamilySpec::hamilton(14), ModelParams::gnp(14, 0.7),
                                      FamilySpec::hamilton(10), ModelParams::gnp(10, 0.7), opt);
    });
    checks.emplace_back(11, [&] {
      return verify::log_normal_shape(11, "log-normal shape, directed Hamilton cycles in D(n,p)",
                                      FamilySpec::directed_hamilton(12), ModelParams::dnp(12, 0.7),
                                      FamilySpec::directed_hamilton(8), ModelParams::dnp(8, 0.7),
                                      opt);
    });
    checks.emplace_back(12, [&] { return verify::random_subfamily_sampling(opt); });
  }
  checks.emplace_back(13, verify::mckay_sanity);

  std::vector<CriterionResult> results;
  for (const auto& [id, check] : checks) {
    CriterionResult res;
    try {
      res = check();
    } catch (const std::exception& e) {
      res.id = id;
      res.name = "criterion " + std::to_string(id);
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
    }
    if (on_result) on_result(res);
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace spanlab
