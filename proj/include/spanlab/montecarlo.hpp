#pragma once

// Seeded samplers for the four random (di)graph models, exact per-sample
// counts of family members, and the statistics built on them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "spanlab/asymptotics.hpp"
#include "spanlab/bigint.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/families.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/rng.hpp"

namespace spanlab {

// Ordered pair number k of 0..2N-1: u = k / (n-1), v skips u.
inline std::pair<Vertex, Vertex> arc_from_index(int n, std::int64_t k) {
  const auto u = static_cast<Vertex>(k / (n - 1));
  const auto r = static_cast<Vertex>(k % (n - 1));
  return {u, r < u ? r : r + 1};
}

namespace detail {

// Pair indices chosen by the model for one sample.
inline std::vector<std::int64_t> sample_indices(const ModelParams& model, CounterRng& rng) {
  const std::int64_t U = model.universe();
  std::vector<std::int64_t> chosen;
  if (model.fixed_edges()) {
    // partial Fisher-Yates over 0..U-1
    std::vector<std::int64_t> idx(static_cast<std::size_t>(U));
    std::iota(idx.begin(), idx.end(), std::int64_t{0});
    const std::int64_t m = model.m();
    for (std::int64_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(U - i)));
      std::swap(idx[i], idx[j]);
    }
    chosen.assign(idx.begin(), idx.begin() + m);
  } else {
    const double p = model.p();
    for (std::int64_t k = 0; k < U; ++k)
      if (rng.bernoulli(p)) chosen.push_back(k);
  }
  return chosen;
}

}  // namespace detail

inline LabeledGraph sample_graph(const ModelParams& model, std::uint64_t seed, std::uint64_t index) {
  if (model.directed()) throw InputError("sample_graph needs an undirected model");
  detail::check_vertex_count(model.n());
  CounterRng rng(seed, index);
  LabeledGraph g(model.n());
  for (std::int64_t k : detail::sample_indices(model, rng)) {
    const auto [u, v] = pair_from_index(k);
    g.add_edge(u, v);
  }
  return g;
}

inline LabeledDigraph sample_digraph(const ModelParams& model, std::uint64_t seed,
                                     std::uint64_t index) {
  if (!model.directed()) throw InputError("sample_digraph needs a directed model");
  detail::check_vertex_count(model.n());
  CounterRng rng(seed, index);
  LabeledDigraph g(model.n());
  for (std::int64_t k : detail::sample_indices(model, rng)) {
    const auto [u, v] = arc_from_index(model.n(), k);
    g.add_arc(u, v);
  }
  return g;
}

inline std::variant<LabeledGraph, LabeledDigraph> sample(const ModelParams& model,
                                                         std::uint64_t seed, std::uint64_t index) {
  if (model.directed()) return sample_digraph(model, seed, index);
  return sample_graph(model, seed, index);
}

inline double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// sup |F_k - Phi| for the empirical distribution F_k of the samples.
inline double ks_distance(std::vector<double> samples) {
  if (samples.empty()) throw DomainError("ks_distance needs at least one sample");
  std::sort(samples.begin(), samples.end());
  const double k = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = standard_normal_cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / k - cdf, cdf - static_cast<double>(i) / k});
  }
  return d;
}

struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased, 0 for a single sample
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
  SampleStats s;
  if (xs.empty()) return s;
  const double k = static_cast<double>(xs.size());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.variance = ss / (k - 1);
  }
  return s;
}

struct NormalizedLogStats {
  double mean = 0.0;
  double variance = 0.0;
  double ks = 0.0;
};

struct SimulationReport {
  FamilySpec spec = FamilySpec::all_h_edge(1, 0);
  ModelParams model = ModelParams::gnm(1, 0);
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<BigInt> counts;
  double zero_fraction = 0.0;
  Rational mean;              // sum of counts / trials, exact
  double expected = 0.0;      // mu for edge-count models, lambda for probability models
  std::optional<Rational> expected_exact;
  double mean_ratio = 0.0;    // mean / expected
  double count_variance = 0.0;
  double mean_standard_error = 0.0;  // of the mean of counts
  double beta = 0.0;
  std::vector<double> normalized_logs;  // probability models with beta > 0, nonzero counts
  std::optional<NormalizedLogStats> stats;

  // |mean - expected| in units of the standard error; 0 when both agree exactly.
  double mean_z() const {
    const double diff = std::abs(to_double(mean) - expected);
    if (mean_standard_error == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / mean_standard_error;
  }
};

inline BigInt count_sample(const FamilySpec& spec, const ModelParams& model, std::uint64_t seed,
                           std::uint64_t index) {
  if (model.directed()) return count_in_host(spec, sample_digraph(model, seed, index));
  return count_in_host(spec, sample_graph(model, seed, index));
}

// Trial i samples with key (seed, i); workers split the trial indices, so the
// report does not depend on the worker count.
inline SimulationReport simulate(const FamilySpec& spec, const ModelParams& model,
                                 std::int64_t trials, std::uint64_t seed, int workers = 1) {
  if (trials < 1) throw DomainError("simulate needs trials >= 1");
  if (workers < 1) throw DomainError("simulate needs workers >= 1");
  detail::check_model_matches(spec, model);
  check_count_caps(spec);
  const auto expect = expectation(spec, model);

  std::vector<BigInt> counts(static_cast<std::size_t>(trials));
  auto run = [&](int w) {
    for (std::int64_t i = w; i < trials; i += workers)
      counts[i] = count_sample(spec, model, seed, static_cast<std::uint64_t>(i));
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SimulationReport r;
  r.spec = spec;
  r.model = model;
  r.trials = trials;
  r.seed = seed;
  r.counts = std::move(counts);
  BigInt sum = 0;
  std::int64_t zeros = 0;
  std::vector<double> values;
  values.reserve(r.counts.size());
  for (const auto& c : r.counts) {
    sum += c;
    zeros += c == 0;
    values.push_back(c.convert_to<double>());
  }
  r.zero_fraction = static_cast<double>(zeros) / static_cast<double>(trials);
  r.mean = Rational(sum, BigInt(trials));
  const auto vs = sample_stats(values);
  r.count_variance = vs.variance;
  r.mean_standard_error = std::sqrt(vs.variance / static_cast<double>(trials));

  if (model.fixed_edges()) {
    r.expected_exact = expect.mu_exact;
    r.expected = expect.mu_exact ? to_double(*expect.mu_exact) : std::exp(expect.mu_log);
  } else {
    r.expected = std::exp(expect.lambda_log);
  }
  r.mean_ratio = r.expected > 0 ? to_double(r.mean) / r.expected
                                : std::numeric_limits<double>::quiet_NaN();
  r.beta = expect.beta;

  if (!model.fixed_edges() && r.beta > 0 && std::isfinite(r.beta)) {
    const double shift = -expect.lambda_log + r.beta * r.beta / 2;
    for (const auto& c : r.counts)
      if (c > 0) r.normalized_logs.push_back((log_big(c) + shift) / r.beta);
    if (!r.normalized_logs.empty()) {
      const auto ts = sample_stats(r.normalized_logs);
      r.stats = NormalizedLogStats{ts.mean, ts.variance, ks_distance(r.normalized_logs)};
    }
  }
  return r;
}

struct TrendRow {
  int n = 0;
  ModelParams model = ModelParams::gnm(1, 0);
  double expected = 0.0;
  double exceed_half = 0.0;     // P(|X/E[X] - 1| > 0.5)
  double exceed_quarter = 0.0;  // P(|X/E[X] - 1| > 0.25)
};

struct TrendReport {
  std::vector<TrendRow> rows;
  bool non_increasing_half = true;
  bool non_increasing_quarter = true;
};

// Model at grid point n: edge-count models take m = floor(c U), probability
// models take p = c.
inline ModelParams model_at(ModelKind kind, int n, double c) {
  const std::int64_t N = pair_count(n);
  const std::int64_t U = kind == ModelKind::dnm || kind == ModelKind::dnp ? 2 * N : N;
  const auto m = static_cast<std::int64_t>(std::floor(c * static_cast<double>(U)));
  switch (kind) {
    case ModelKind::gnm: return ModelParams::gnm(n, m);
    case ModelKind::gnp: return ModelParams::gnp(n, c);
    case ModelKind::dnm: return ModelParams::dnm(n, m);
    case ModelKind::dnp: return ModelParams::dnp(n, c);
  }
  throw DomainError("unknown model");
}

inline TrendReport concentration_trend(const std::function<FamilySpec(int)>& family_at,
                                       const std::vector<int>& n_grid, ModelKind kind, double c,
                                       std::int64_t trials, std::uint64_t seed, int workers = 1) {
  if (n_grid.empty()) throw DomainError("trend needs a non-empty n grid");
  std::vector<FamilySpec> specs;
  std::vector<ModelParams> models;
  for (int n : n_grid) {
    specs.push_back(family_at(n));
    models.push_back(model_at(kind, n, c));
    check_count_caps(specs.back());
  }
  TrendReport rep;
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const auto sim = simulate(specs[g], models[g], trials, seed, workers);
    TrendRow row;
    row.n = n_grid[g];
    row.model = models[g];
    row.expected = sim.expected;
    std::int64_t half = 0, quarter = 0;
    for (const auto& x : sim.counts) {
      const double dev = std::abs(x.convert_to<double>() / sim.expected - 1);
      half += dev > 0.5;
      quarter += dev > 0.25;
    }
    row.exceed_half = static_cast<double>(half) / static_cast<double>(trials);
    row.exceed_quarter = static_cast<double>(quarter) / static_cast<double>(trials);
    if (!rep.rows.empty()) {
      rep.non_increasing_half &= row.exceed_half <= rep.rows.back().exceed_half;
      rep.non_increasing_quarter &= row.exceed_quarter <= rep.rows.back().exceed_quarter;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace spanlab
