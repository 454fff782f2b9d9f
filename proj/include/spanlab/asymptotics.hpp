#pragma once

// Expectations of X_n in G(n,m), G(n,p), D(n,m), D(n,p), the hypergeometric
// falling-factorial ratio, and finite-n reports on the ratio conditions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spanlab/bigint.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/families.hpp"
#include "spanlab/family.hpp"
#include "spanlab/spectrum.hpp"

namespace spanlab {

enum class ModelKind { gnm, gnp, dnm, dnp };

inline const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::gnm: return "gnm";
    case ModelKind::gnp: return "gnp";
    case ModelKind::dnm: return "dnm";
    case ModelKind::dnp: return "dnp";
  }
  return "?";
}

// A random (di)graph model. Probability models also carry the nearest edge
// count m = round(pU) for comparisons with the edge-count models.
class ModelParams {
 public:
  static ModelParams gnm(int n, std::int64_t m) { return {ModelKind::gnm, n, m, 0.0}; }
  static ModelParams gnp(int n, double p) { return {ModelKind::gnp, n, 0, p}; }
  static ModelParams dnm(int n, std::int64_t m) { return {ModelKind::dnm, n, m, 0.0}; }
  static ModelParams dnp(int n, double p) { return {ModelKind::dnp, n, 0, p}; }

  ModelKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  bool directed() const noexcept { return kind_ == ModelKind::dnm || kind_ == ModelKind::dnp; }
  bool fixed_edges() const noexcept { return kind_ == ModelKind::gnm || kind_ == ModelKind::dnm; }

  std::int64_t universe() const noexcept {
    const std::int64_t N = pair_count(n_);
    return directed() ? 2 * N : N;
  }

  // m for edge-count models, round(pU) for probability models.
  std::int64_t m() const noexcept { return m_; }
  // p for probability models, m/U for edge-count models.
  double p() const noexcept { return p_; }
  // m/U with the effective m.
  double effective_p() const noexcept {
    const std::int64_t U = universe();
    return U == 0 ? 0.0 : static_cast<double>(m_) / static_cast<double>(U);
  }

 private:
  ModelParams(ModelKind kind, int n, std::int64_t m, double p) : kind_(kind), n_(n), m_(m), p_(p) {
    if (n < 1) throw DomainError("model needs n >= 1");
    const std::int64_t U = universe();
    if (fixed_edges()) {
      if (m < 0 || m > U)
        throw DomainError("m = " + std::to_string(m) + " outside 0..U = " + std::to_string(U));
      p_ = U == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(U);
    } else {
      if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p outside [0,1]");
      m_ = std::llround(p * static_cast<double>(U));
    }
  }

  ModelKind kind_;
  int n_;
  std::int64_t m_;
  double p_;
};

struct FallingFactorialRatio {
  Rational exact;           // [m]_l / [U]_l
  double log_asymptotic;    // l ln p - ((1-p)/(pU)) (l^2 - l)/2
  bool beyond_support = false;  // l > m, exact ratio is 0

  double asymptotic() const { return std::exp(log_asymptotic); }
};

// C(U-l, m-l) / C(U, m) = [m]_l / [U]_l, exactly and in the asymptotic form.
inline FallingFactorialRatio falling_factorial_ratio(std::int64_t U, std::int64_t m, std::int64_t l) {
  if (U < 0 || m < 0 || m > U) throw DomainError("falling factorial ratio needs 0 <= m <= U");
  if (l < 0) throw DomainError("falling factorial ratio needs l >= 0");
  FallingFactorialRatio out;
  if (l > m) {
    out.exact = 0;
    out.beyond_support = true;
    out.log_asymptotic = -std::numeric_limits<double>::infinity();
    return out;
  }
  out.exact = Rational(falling_factorial(m, l), falling_factorial(U, l));
  if (l == 0) {
    out.log_asymptotic = 0.0;
    return out;
  }
  const double p = static_cast<double>(m) / static_cast<double>(U);
  const double ld = static_cast<double>(l);
  out.log_asymptotic = ld * std::log(p) - (1 - p) / (p * static_cast<double>(U)) * (ld * ld - ld) / 2;
  return out;
}

// ln [x]_l for real-valued evaluation; -inf when l > x.
inline double log_falling_factorial(std::int64_t x, std::int64_t l) {
  if (l > x) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(x) + 1) - std::lgamma(static_cast<double>(x - l) + 1);
}

// |S| (m/U)^h exp(-((U-m)/(mU)) h^2/2), term by term in the log domain.
struct MuTerms {
  double log_size = 0.0;
  double log_power = 0.0;
  double correction = 0.0;

  double log_total() const { return log_size + log_power + correction; }
};

struct ExpectationReport {
  std::string family;
  ModelParams model = ModelParams::gnm(1, 0);
  std::int64_t h = 0;
  std::optional<Rational> mu_exact;
  double mu_log = 0.0;  // -inf when m < h
  double lambda_log = 0.0;
  double beta = 0.0;
  std::optional<double> beta_limit;
  MuTerms eq_mu_terms;
  bool too_few_edges = false;  // m < h, so mu = 0
};

inline constexpr std::int64_t kExactMuMaxEdges = 20'000;

namespace detail {

inline void check_model_matches(const FamilySpec& spec, const ModelParams& model) {
  if (spec.n() != model.n()) throw InputError("model n differs from family n");
  if (spec.directed() != model.directed())
    throw InputError(spec.directed() ? "directed family needs a dnm or dnp model"
                                     : "undirected family needs a gnm or gnp model");
}

inline double beta_value(std::int64_t h, double p, std::int64_t U) {
  if (h == 0 || p >= 1.0) return 0.0;
  if (p <= 0.0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(h) * std::sqrt((1 - p) / (p * static_cast<double>(U)));
}

}  // namespace detail

inline ExpectationReport expectation(const FamilySpec& spec, const ModelParams& model) {
  detail::check_model_matches(spec, model);
  const auto card = cardinality(spec);
  const std::int64_t h = spec.edge_count();
  const std::int64_t U = model.universe();
  const std::int64_t m = model.m();
  const double p = model.p();
  const double log_size = card.log_value();

  ExpectationReport r;
  r.family = spec.name();
  r.model = model;
  r.h = h;
  r.too_few_edges = m < h;
  if (card.exact && h <= kExactMuMaxEdges)
    r.mu_exact = Rational(*card.exact * falling_factorial(m, h), falling_factorial(U, h));
  r.mu_log = r.too_few_edges ? -std::numeric_limits<double>::infinity()
                             : log_size + log_falling_factorial(m, h) - log_falling_factorial(U, h);

  if (h == 0) r.lambda_log = log_size;
  else if (p <= 0.0) r.lambda_log = -std::numeric_limits<double>::infinity();
  else r.lambda_log = log_size + static_cast<double>(h) * std::log(p);

  r.beta = detail::beta_value(h, p, U);
  const bool undirected_limit = spec.is<family::HamiltonCycle>() || spec.is<family::TriangleFactor>();
  const bool directed_limit =
      spec.is<family::DirectedHamiltonCycle>() || spec.is<family::DirectedTriangleFactor>();
  if (p > 0.0 && (undirected_limit || directed_limit))
    r.beta_limit = std::sqrt((undirected_limit ? 2.0 : 1.0) * (1 - p) / p);

  r.eq_mu_terms.log_size = log_size;
  if (m > 0) {
    const double hd = static_cast<double>(h), md = static_cast<double>(m), Ud = static_cast<double>(U);
    r.eq_mu_terms.log_power = hd * std::log(md / Ud);
    r.eq_mu_terms.correction = -((Ud - md) / (md * Ud)) * hd * hd / 2;
  } else {
    r.eq_mu_terms.log_power = h == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  return r;
}

// Default upper end gamma(n) of the window in condition (b).
inline std::int64_t default_gamma(const FamilySpec& spec) {
  const std::int64_t h = spec.edge_count();
  const double n = spec.n();
  return std::visit(
      overloaded{[&](const family::DegreeSeq&) { return 7 * h / 8; },
                 [&](const family::HamiltonCycle&) { return static_cast<std::int64_t>(n / 2); },
                 [&](const family::DirectedHamiltonCycle&) {
                   return std::clamp<std::int64_t>(
                       static_cast<std::int64_t>(std::floor(n - 2 * std::log(n))), 0, h);
                 },
                 [&](const family::TriangleFactor&) {
                   const double ll = std::log(std::log(n));
                   return ll <= 0 ? h : std::min<std::int64_t>(h, static_cast<std::int64_t>(n / ll));
                 },
                 [&](const family::DirectedTriangleFactor&) {
                   const double ll = std::log(std::log(n));
                   return ll <= 0 ? h : std::min<std::int64_t>(h, static_cast<std::int64_t>(n / ll));
                 },
                 [&](const auto&) { return h; }},
      spec.kind());
}

struct ConditionReport {
  std::string family;
  ModelParams model = ModelParams::gnm(1, 0);
  std::int64_t h = 0;
  std::int64_t gamma = 0;
  double K = 4.0;
  // (a): |r_j U j / h^2 - 1| for 1 <= j <= min(K h^2/m, h); empty where r_j is undefined
  std::vector<std::pair<std::int64_t, std::optional<double>>> deviations;
  // (b): r_j <= m/(2U) for ceil(4h^2/m) <= j <= gamma
  std::vector<std::pair<std::int64_t, std::optional<bool>>> ratio_window;
  // (c): sum_{j > gamma} f_j against mu |S|
  BigInt tail_mass;
  std::optional<Rational> tail_reference_exact;
  double tail_reference_log = 0.0;
  // (d)
  std::optional<Rational> mu_exact;
  double mu_log = 0.0;
};

inline ConditionReport condition_report(const IntersectionSpectrum& spectrum,
                                        const ModelParams& model, std::int64_t gamma,
                                        double K = 4.0) {
  const FamilySpec& spec = spectrum.family;
  detail::check_model_matches(spec, model);
  if (!(K > 0)) throw DomainError("K must be positive");
  const auto expect = expectation(spec, model);
  const auto ratios = ratio_series(spectrum);
  const std::int64_t h = spectrum.h();
  const std::int64_t U = model.universe();
  const std::int64_t m = model.m();

  ConditionReport rep;
  rep.family = spec.name();
  rep.model = model;
  rep.h = h;
  rep.gamma = gamma;
  rep.K = K;
  const BigInt size = *cardinality(spec).exact;

  if (m > 0 && h > 0) {
    const double rho = static_cast<double>(h) * static_cast<double>(h) / static_cast<double>(m);
    const auto last = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(K * rho)), h);
    for (std::int64_t j = 1; j <= last; ++j) {
      std::optional<double> dev;
      if (ratios.r[j]) {
        const Rational scaled = *ratios.r[j] * U * j / (BigInt(h) * h);
        dev = std::abs(to_double(scaled - 1));
      }
      rep.deviations.emplace_back(j, dev);
    }
    const Rational threshold(BigInt(m), BigInt(2 * U));
    const auto first = static_cast<std::int64_t>(std::ceil(4 * rho));
    for (std::int64_t j = std::max<std::int64_t>(first, 1); j <= std::min(gamma, h); ++j) {
      std::optional<bool> ok;
      if (ratios.r[j]) ok = *ratios.r[j] <= threshold;
      rep.ratio_window.emplace_back(j, ok);
    }
  }

  rep.tail_mass = 0;
  for (std::int64_t j = std::max<std::int64_t>(gamma + 1, 0); j <= h; ++j) rep.tail_mass += spectrum.f[j];
  if (expect.mu_exact) rep.tail_reference_exact = *expect.mu_exact * size;
  rep.tail_reference_log = expect.mu_log + log_big(size);
  rep.mu_exact = expect.mu_exact;
  rep.mu_log = expect.mu_log;
  return rep;
}

inline ConditionReport condition_report(const FamilySpec& spec, const ModelParams& model,
                                        std::optional<std::int64_t> gamma = std::nullopt,
                                        double K = 4.0) {
  detail::check_model_matches(spec, model);
  return condition_report(spectrum_exact(spec), model, gamma.value_or(default_gamma(spec)), K);
}

}  // namespace spanlab
