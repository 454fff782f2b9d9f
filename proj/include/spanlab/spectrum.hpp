#pragma once

// Intersection spectra f_j = #{(H1,H2) in S x S : |H1 n H2| = j}, the
// ratio series r_j = f_j / f_{j-1} and the exact formulas that produce them.

#include <cmath>
#include <optional>
#include <vector>

#include "spanlab/bigint.hpp"
#include "spanlab/enumerate.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/families.hpp"
#include "spanlab/family.hpp"

namespace spanlab {

inline constexpr std::int64_t kFixedRepresentativeMaxMembers = 20'000'000;
inline constexpr std::int64_t kPairEnumerationMaxMembers = 20'000;

enum class SpectrumMethod { automatic, pair_enumeration, fixed_representative, closed_form, recursion };

inline const char* to_string(SpectrumMethod m) {
  switch (m) {
    case SpectrumMethod::automatic: return "automatic";
    case SpectrumMethod::pair_enumeration: return "pair-enumeration";
    case SpectrumMethod::fixed_representative: return "fixed-representative";
    case SpectrumMethod::closed_form: return "closed-form";
    case SpectrumMethod::recursion: return "recursion";
  }
  return "?";
}

struct IntersectionSpectrum {
  FamilySpec family;
  std::vector<BigInt> f;  // indexed j = 0..h
  SpectrumMethod method;

  std::int64_t h() const { return static_cast<std::int64_t>(f.size()) - 1; }

  BigInt total() const {
    BigInt s = 0;
    for (const auto& x : f) s += x;
    return s;
  }
};

// f_j for the family of all h-edge graphs: C(N,j) C(N-j,h-j) C(N-h,h-j).
inline BigInt s1_closed_form_fj(std::int64_t n, std::int64_t h, std::int64_t j) {
  const std::int64_t N = pair_count(n);
  if (h < 0 || h > N) throw DomainError("h outside 0..C(n,2)");
  if (j < 0 || j > h) throw DomainError("j outside 0..h");
  return binomial(N, j) * binomial(N - j, h - j) * binomial(N - h, h - j);
}

// Directed Hamilton cycles on n vertices sharing no arc with a fixed one:
// sum_{k=0}^{n-1} C(n,k) (-1)^k (n-k-1)! + (-1)^n.
inline BigInt dir_hamilton_f0(std::int64_t n) {
  if (n < 1) throw DomainError("dir_hamilton_f0 needs n >= 1");
#ifdef SPANLAB_MUTATE_DIR_HAMILTON_F0
  const std::int64_t last = n - 2;  // deliberately broken bound for mutation testing
#else
  const std::int64_t last = n - 1;
#endif
  BigInt sum = 0;
  BigInt choose = 1;  // C(n, k)
  for (std::int64_t k = 0; k <= last; ++k) {
    const BigInt term = choose * factorial(n - k - 1);
    if (k % 2 == 0) sum += term;
    else sum -= term;
    choose = choose * (n - k) / (k + 1);
  }
  if (n % 2 == 0) sum += 1;
  else sum -= 1;
  return sum;
}

// f'_0(k) for k = 0..n (entry 0 is the empty-sum value 1, only used by f'_n).
inline std::vector<BigInt> dir_hamilton_f0_table(std::int64_t n) {
  std::vector<BigInt> table(static_cast<std::size_t>(n + 1));
  table[0] = 1;
  for (std::int64_t k = 1; k <= n; ++k) table[k] = dir_hamilton_f0(k);
  return table;
}

// Per-representative count f'_j(n) = C(n,j) f'_0(n-j) for j < n, and 1 for j = n.
inline BigInt dir_hamilton_fj(std::int64_t n, std::int64_t j) {
  if (n < 1) throw DomainError("dir_hamilton_fj needs n >= 1");
  if (j < 0 || j > n) throw DomainError("j outside 0..n");
  if (j == n) return 1;
  return binomial(n, j) * dir_hamilton_f0(n - j);
}

// All f'_j(n), j = 0..n, sharing one table of f'_0 values.
inline std::vector<BigInt> dir_hamilton_row(std::int64_t n) {
  const auto f0 = dir_hamilton_f0_table(n);
  std::vector<BigInt> row(static_cast<std::size_t>(n + 1));
  for (std::int64_t j = 0; j < n; ++j) row[j] = binomial(n, j) * f0[n - j];
  row[n] = 1;
  return row;
}

namespace detail {

inline std::size_t shared_edges(std::span<const Row> a, std::span<const Row> b, bool directed) {
  const std::size_t bits = common_bits(a, b);
  return directed ? bits : bits / 2;
}

inline void require_enumerable(const FamilySpec& spec, std::int64_t max_members,
                               const char* what) {
  if (spec.n() > kMaxVertices) throw CapabilityError(what, "n <= 64");
  // closed-form sizes are checked up front; the rest are capped while enumerating
  if (spec.vertex_transitive() && *cardinality(spec).exact > max_members)
    throw CapabilityError(what, "|S| <= " + std::to_string(max_members));
  check_count_caps(spec);
}

inline std::vector<std::vector<Row>> materialize(const FamilySpec& spec, std::int64_t max_members,
                                                 const char* what) {
  std::vector<std::vector<Row>> members;
  for_each_member(spec, [&](std::span<const Row> rows) {
    if (static_cast<std::int64_t>(members.size()) >= max_members)
      throw CapabilityError(what, "|S| <= " + std::to_string(max_members));
    members.emplace_back(rows.begin(), rows.end());
  });
  return members;
}

}  // namespace detail

// Full O(|S|^2) pair enumeration.
inline IntersectionSpectrum spectrum_pairwise(const FamilySpec& spec) {
  detail::require_enumerable(spec, kPairEnumerationMaxMembers, "pair enumeration");
  const auto members = detail::materialize(spec, kPairEnumerationMaxMembers, "pair enumeration");
  const std::int64_t h = spec.edge_count();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(h + 1), 0);
  const bool directed = spec.directed();
  for (const auto& a : members)
    for (const auto& b : members) ++counts[detail::shared_edges(a, b, directed)];
  IntersectionSpectrum s{spec, {}, SpectrumMethod::pair_enumeration};
  s.f.assign(counts.begin(), counts.end());
  return s;
}

// f_j = |S| * #{H : |H n H0| = j} for the representative H0 = member number
// `representative` in enumeration order. Only valid for vertex-transitive families.
inline IntersectionSpectrum spectrum_fixed_representative(const FamilySpec& spec,
                                                          std::int64_t representative = 0) {
  if (!spec.vertex_transitive())
    throw DomainError("fixed-representative counting needs a vertex-transitive family");
  detail::require_enumerable(spec, kFixedRepresentativeMaxMembers, "fixed-representative");
  const BigInt size = *cardinality(spec).exact;
  if (representative < 0 || representative >= size)
    throw DomainError("representative index outside 0..|S|-1");
  std::vector<Row> rep;
  std::int64_t index = 0;
  for_each_member(spec, [&](std::span<const Row> rows) {
    if (index++ == representative) rep.assign(rows.begin(), rows.end());
  });
  const std::int64_t h = spec.edge_count();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(h + 1), 0);
  const bool directed = spec.directed();
  for_each_member(spec, [&](std::span<const Row> rows) {
    ++counts[detail::shared_edges(rep, rows, directed)];
  });
  IntersectionSpectrum s{spec, {}, SpectrumMethod::fixed_representative};
  for (auto c : counts) s.f.push_back(size * c);
  return s;
}

inline IntersectionSpectrum spectrum_exact(const FamilySpec& spec,
                                           SpectrumMethod method = SpectrumMethod::automatic) {
  if (method == SpectrumMethod::automatic) {
    if (spec.is<family::AllHEdge>()) method = SpectrumMethod::closed_form;
    else if (spec.is<family::DirectedHamiltonCycle>()) method = SpectrumMethod::recursion;
    else if (spec.vertex_transitive()) method = SpectrumMethod::fixed_representative;
    else method = SpectrumMethod::pair_enumeration;
  }
  switch (method) {
    case SpectrumMethod::closed_form: {
      if (!spec.is<family::AllHEdge>()) throw DomainError("closed form only for all-h-edge");
      const std::int64_t h = spec.edge_count();
      IntersectionSpectrum s{spec, {}, method};
      for (std::int64_t j = 0; j <= h; ++j) s.f.push_back(s1_closed_form_fj(spec.n(), h, j));
      return s;
    }
    case SpectrumMethod::recursion: {
      if (!spec.is<family::DirectedHamiltonCycle>())
        throw DomainError("recursion only for directed Hamilton cycles");
      const BigInt size = factorial(spec.n() - 1);
      IntersectionSpectrum s{spec, {}, method};
      for (const auto& x : dir_hamilton_row(spec.n())) s.f.push_back(size * x);
      return s;
    }
    case SpectrumMethod::fixed_representative: return spectrum_fixed_representative(spec);
    case SpectrumMethod::pair_enumeration: return spectrum_pairwise(spec);
    case SpectrumMethod::automatic: break;
  }
  throw DomainError("unknown spectrum method");
}

// r_j = f_j / f_{j-1}, j = 1..h; entry 0 and entries with f_{j-1} = 0 are empty.
struct RatioSeries {
  std::vector<std::optional<Rational>> r;
};

inline RatioSeries ratio_series(const IntersectionSpectrum& s) {
  RatioSeries out;
  out.r.resize(s.f.size());
  for (std::size_t j = 1; j < s.f.size(); ++j)
    if (s.f[j - 1] != 0) out.r[j] = Rational(s.f[j], s.f[j - 1]);
  return out;
}

// Leading-order r_j. For all-h-edge families this is the exact closed-form
// ratio (h-j+1)^2 / (j (N-2h+j)).
inline double predicted_ratio(const FamilySpec& spec, std::int64_t j) {
  if (j < 1) throw DomainError("predicted ratio needs j >= 1");
  const double h = static_cast<double>(spec.edge_count());
  const double N = static_cast<double>(pair_count(spec.n()));
  const double jd = static_cast<double>(j);
  return std::visit(
      overloaded{[&](const family::AllHEdge&) {
                   return j > spec.edge_count() ? 0.0
                                                : (h - jd + 1) * (h - jd + 1) / (jd * (N - 2 * h + jd));
                 },
                 [&](const family::RandomSubfamily&) {
                   return j > spec.edge_count() ? 0.0
                                                : (h - jd + 1) * (h - jd + 1) / (jd * (N - 2 * h + jd));
                 },
                 [&](const family::DegreeSeq& d) {
                   const double m2 = static_cast<double>(d.d.m2());
                   return m2 * m2 / (8 * h * h * jd);
                 },
                 [&](const family::TriangleFreeHEdge&) { return h * h / (N * jd); },
                 [&](const family::HamiltonCycle&) { return 2.0 / jd; },
                 [&](const family::DirectedHamiltonCycle&) { return 1.0 / jd; },
                 [&](const family::TriangleFactor&) { return 2.0 / jd; },
                 [&](const family::DirectedTriangleFactor&) { return 1.0 / jd; }},
      spec.kind());
}

// ln of |S|^2 e^{-h^2/U} (h^2/U)^j / j!, U the universe size (N or 2N).
inline double poisson_prediction_log_fj(const FamilySpec& spec, std::int64_t j) {
  if (j < 0) throw DomainError("poisson prediction needs j >= 0");
  const double log_size = cardinality(spec).log_value();
  const double h = static_cast<double>(spec.edge_count());
  const double rate = h * h / static_cast<double>(spec.universe());
  const double jd = static_cast<double>(j);
  const double power = j == 0 ? 0.0 : jd * std::log(rate);
  return 2 * log_size - rate + power - std::lgamma(jd + 1);
}

// kappa_j(G): Hamilton cycles sharing at least j edges with a fixed one,
// against C(n,j) (n-j-1)!/2 * 2^j and n! 2^j / j!.
struct KappaRow {
  std::int64_t j = 0;
  BigInt kappa;
  std::optional<Rational> contraction_bound;  // undefined at j = n
  BigInt coarse_bound;
  bool contraction_holds = true;
  bool coarse_holds = true;
};

struct KappaReport {
  int n = 0;
  std::vector<KappaRow> rows;
  bool holds() const {
    for (const auto& r : rows)
      if (!r.contraction_holds || !r.coarse_holds) return false;
    return true;
  }
};

inline constexpr int kKappaMaxN = 10;

inline KappaReport kappa_upper_bound_check(int n) {
  if (n < 3) throw DomainError("kappa check needs n >= 3");
  if (n > kKappaMaxN) throw CapabilityError("kappa enumeration", "n <= " + std::to_string(kKappaMaxN));
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const auto fixed = LabeledGraph::cycle(n, order);
  std::vector<std::uint64_t> exactly(static_cast<std::size_t>(n + 1), 0);
  for_each_hamilton_cycle(n, false, [&](std::span<const Row> rows) {
    ++exactly[detail::shared_edges(fixed.rows(), rows, false)];
  });
  KappaReport report{n, {}};
  std::uint64_t at_least = 0;
  std::vector<BigInt> kappa(static_cast<std::size_t>(n + 1));
  for (int j = n; j >= 0; --j) {
    at_least += exactly[j];
    kappa[j] = at_least;
  }
  for (int j = 0; j <= n; ++j) {
    KappaRow row;
    row.j = j;
    row.kappa = kappa[j];
    if (j <= n - 1) {
      row.contraction_bound =
          Rational(binomial(n, j) * factorial(n - j - 1) * (BigInt(1) << j), BigInt(2));
      row.contraction_holds = Rational(row.kappa) <= *row.contraction_bound;
    }
    row.coarse_bound = factorial(n) * (BigInt(1) << j) / factorial(j);
    row.coarse_holds = row.kappa < row.coarse_bound;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace spanlab
