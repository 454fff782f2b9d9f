#pragma once

// Cardinalities, membership tests and host counts for the graph families.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "spanlab/bigint.hpp"
#include "spanlab/counting.hpp"
#include "spanlab/enumerate.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/family.hpp"
#include "spanlab/graph.hpp"

namespace spanlab {

inline constexpr std::int64_t kRandomSubfamilyMaxUniverse = 10'000'000;

enum class CardinalityMethod { closed_form, enumeration, mckay_asymptotic };

inline const char* to_string(CardinalityMethod m) {
  switch (m) {
    case CardinalityMethod::closed_form: return "closed-form";
    case CardinalityMethod::enumeration: return "enumeration";
    case CardinalityMethod::mckay_asymptotic: return "mckay-asymptotic";
  }
  return "?";
}

struct CardinalityResult {
  std::optional<BigInt> exact;
  std::optional<double> log_asymptotic;
  CardinalityMethod method = CardinalityMethod::closed_form;
  // |ln exact - log_asymptotic| when both are known
  std::optional<double> log_discrepancy;
  // size of the error term the asymptotic formula leaves out (Delta^4 / h)
  std::optional<double> omitted_error_term;

  double log_value() const {
    if (exact) return log_big(*exact);
    return *log_asymptotic;
  }
};

// ln of McKay's estimate for the number of graphs with degree sequence d,
// main term with both exponential corrections and without O(Delta^4/h).
inline double mckay_log_main_term(const DegreeSequence& d) {
  const double m1 = static_cast<double>(d.m1());
  const double m2 = static_cast<double>(d.m2());
  if (d.m1() == 0) return 0.0;
  double log_value = std::lgamma(m1 + 1) - std::lgamma(m1 / 2 + 1) - (m1 / 2) * std::log(2.0);
  for (int x : d.degrees()) log_value -= std::lgamma(static_cast<double>(x) + 1);
  const double excess = m2 - m1;
  return log_value - excess / (2 * m1) - excess * excess / (4 * m1 * m1);
}

namespace detail {

inline void check_random_subfamily_cap(int n, std::int64_t h) {
  if (binomial(pair_count(n), h) > kRandomSubfamilyMaxUniverse)
    throw CapabilityError("random subfamily materialization",
                          "C(N,h) <= " + std::to_string(kRandomSubfamilyMaxUniverse));
}

inline bool rows_contained(std::span<const Row> sub, std::span<const Row> host) {
  for (std::size_t v = 0; v < sub.size(); ++v)
    if ((sub[v] & ~host[v]) != 0) return false;
  return true;
}

}  // namespace detail

inline CardinalityResult cardinality(const FamilySpec& spec) {
  const int n = spec.n();
  auto closed = [](BigInt value) {
    CardinalityResult r;
    r.log_asymptotic = log_big(value);
    r.exact = std::move(value);
    r.method = CardinalityMethod::closed_form;
    r.log_discrepancy = 0.0;
    return r;
  };
  auto enumerated = [](BigInt value) {
    CardinalityResult r;
    r.exact = std::move(value);
    r.method = CardinalityMethod::enumeration;
    return r;
  };
  return std::visit(
      overloaded{
          [&](const family::AllHEdge& a) { return closed(binomial(pair_count(n), a.h)); },
          [&](const family::RandomSubfamily& r) {
            detail::check_random_subfamily_cap(n, r.h);
            BigInt size = 0;
            for_each_random_subfamily_member(n, r.h, r.phat, r.seed,
                                             [&](std::span<const Row>) { ++size; });
            return enumerated(size);
          },
          [&](const family::DegreeSeq& d) {
            CardinalityResult r;
            r.log_asymptotic = mckay_log_main_term(d.d);
            r.method = CardinalityMethod::mckay_asymptotic;
            if (d.d.h() > 0) {
              const double delta = d.d.max_degree();
              r.omitted_error_term = std::pow(delta, 4) / static_cast<double>(d.d.h());
            }
            if (n <= kDegreeSeqMaxN && d.d.h() <= kDegreeSeqMaxH) {
              r.exact = count_degree_subgraphs(LabeledGraph::complete(n), d.d);
              r.method = CardinalityMethod::enumeration;
              r.log_discrepancy = std::abs(log_big(*r.exact) - *r.log_asymptotic);
            }
            return r;
          },
          [&](const family::TriangleFreeHEdge& t) {
            if (n > kMaxVertices) throw CapabilityError("triangle-free enumeration", "n <= 64");
            return enumerated(count_triangle_free_subgraphs(LabeledGraph::complete(n), t.h));
          },
          [&](const family::HamiltonCycle&) { return closed(factorial(n - 1) / 2); },
          [&](const family::DirectedHamiltonCycle&) { return closed(factorial(n - 1)); },
          [&](const family::TriangleFactor&) {
            const int k = n / 3;
            return closed(factorial(n) / (boost::multiprecision::pow(BigInt(6), k) * factorial(k)));
          },
          [&](const family::DirectedTriangleFactor&) {
            const int k = n / 3;
            return closed(factorial(n) / (boost::multiprecision::pow(BigInt(3), k) * factorial(k)));
          }},
      spec.kind());
}

namespace detail {

inline bool is_single_cycle(std::span<const Row> succ, int n, bool directed) {
  // walk from 0 along the cycle; every vertex has exactly one way forward
  Vertex prev = -1, cur = 0;
  for (int step = 0; step < n; ++step) {
    Row next = succ[cur];
    if (!directed && prev >= 0) next &= ~bit(prev);
    if (std::popcount(next) != (directed || prev >= 0 ? 1 : 2)) return false;
    const Vertex nxt = std::countr_zero(next);
    prev = cur;
    cur = nxt;
    if (cur == 0) return step == n - 1;
  }
  return false;
}

}  // namespace detail

inline bool is_member(const FamilySpec& spec, const LabeledGraph& g) {
  if (g.n() != spec.n()) throw InputError("graph n differs from family n");
  if (spec.directed()) throw InputError("undirected graph tested against a directed family");
  const int n = g.n();
  if (static_cast<std::int64_t>(g.edge_count()) != spec.edge_count()) return false;
  auto has_triangle = [&] {
    for (auto [u, v] : g.edges())
      if ((g.neighbors(u) & g.neighbors(v)) != 0) return true;
    return false;
  };
  return std::visit(
      overloaded{
          [&](const family::AllHEdge&) { return true; },
          [&](const family::RandomSubfamily& r) {
            std::vector<std::int64_t> c;
            for (auto [u, v] : g.edges()) c.push_back(pair_index(u, v));
            std::sort(c.begin(), c.end());
            const BigInt rank = colex_rank(c);
            return keyed_uniform(r.seed, rank.convert_to<std::uint64_t>()) < r.phat;
          },
          [&](const family::DegreeSeq& d) { return degree_sequence_of(g) == d.d; },
          [&](const family::TriangleFreeHEdge&) { return !has_triangle(); },
          [&](const family::HamiltonCycle&) {
            return detail::is_single_cycle(g.rows(), n, false);
          },
          [&](const family::TriangleFactor&) {
            for (int v = 0; v < n; ++v) {
              const Row nb = g.neighbors(v);
              if (std::popcount(nb) != 2) return false;
              const int a = std::countr_zero(nb);
              const int b = std::countr_zero(nb & (nb - 1));
              if (!g.has_edge(a, b)) return false;
            }
            return true;
          },
          [](const auto&) { return false; }},
      spec.kind());
}

inline bool is_member(const FamilySpec& spec, const LabeledDigraph& g) {
  if (g.n() != spec.n()) throw InputError("digraph n differs from family n");
  if (!spec.directed()) throw InputError("digraph tested against an undirected family");
  const int n = g.n();
  if (static_cast<std::int64_t>(g.arc_count()) != spec.edge_count()) return false;
  for (int v = 0; v < n; ++v)
    if (std::popcount(g.out_neighbors(v)) != 1 || std::popcount(g.in_neighbors(v)) != 1)
      return false;
  if (spec.is<family::DirectedHamiltonCycle>()) return detail::is_single_cycle(g.rows(), n, true);
  auto succ = [&](Vertex v) { return std::countr_zero(g.out_neighbors(v)); };
  for (int v = 0; v < n; ++v) {
    const Vertex a = succ(v);
    const Vertex b = succ(a);
    if (b == v || succ(b) != v) return false;
  }
  return true;
}

inline BigInt count_in_host(const FamilySpec& spec, const LabeledGraph& host) {
  if (host.n() != spec.n()) throw InputError("host n differs from family n");
  if (spec.directed()) throw InputError("directed family counted in an undirected host");
  return std::visit(
      overloaded{
          [&](const family::AllHEdge& a) {
            return binomial(static_cast<std::int64_t>(host.edge_count()), a.h);
          },
          [&](const family::RandomSubfamily& r) {
            detail::check_random_subfamily_cap(host.n(), r.h);
            BigInt total = 0;
            for_each_random_subfamily_member(host.n(), r.h, r.phat, r.seed,
                                             [&](std::span<const Row> rows) {
                                               if (detail::rows_contained(rows, host.rows()))
                                                 ++total;
                                             });
            return total;
          },
          [&](const family::DegreeSeq& d) { return count_degree_subgraphs(host, d.d); },
          [&](const family::TriangleFreeHEdge& t) {
            return BigInt(count_triangle_free_subgraphs(host, t.h));
          },
          [&](const family::HamiltonCycle&) { return BigInt(count_hamilton_cycles(host)); },
          [&](const family::TriangleFactor&) { return BigInt(count_triangle_factors(host)); },
          [](const auto&) -> BigInt { throw InputError("unreachable directed family"); }},
      spec.kind());
}

inline BigInt count_in_host(const FamilySpec& spec, const LabeledDigraph& host) {
  if (host.n() != spec.n()) throw InputError("host n differs from family n");
  if (!spec.directed()) throw InputError("undirected family counted in a directed host");
  if (spec.is<family::DirectedHamiltonCycle>())
    return BigInt(count_directed_hamilton_cycles(host));
  return BigInt(count_directed_triangle_factors(host));
}

// Throws CapabilityError when count_in_host could exceed a cap for some host
// on spec.n() vertices.
inline void check_count_caps(const FamilySpec& spec) {
  const int n = spec.n();
  if (n > kMaxVertices) throw CapabilityError("host counting", "n <= 64");
  std::visit(overloaded{
                 [](const family::AllHEdge&) {},
                 [&](const family::RandomSubfamily& r) {
                   detail::check_random_subfamily_cap(n, r.h);
                 },
                 [](const family::DegreeSeq& d) { detail::check_degree_caps(d.d); },
                 [&](const family::TriangleFreeHEdge& t) {
                   detail::check_triangle_free_caps(static_cast<std::size_t>(pair_count(n)), t.h);
                 },
                 [&](const family::HamiltonCycle&) {
                   if (n > kHamiltonMaxN)
                     throw CapabilityError("Hamilton cycle counting",
                                           "n <= " + std::to_string(kHamiltonMaxN));
                 },
                 [&](const family::DirectedHamiltonCycle&) {
                   if (n > kDirectedHamiltonMaxN)
                     throw CapabilityError("directed Hamilton cycle counting",
                                           "n <= " + std::to_string(kDirectedHamiltonMaxN));
                 },
                 [&](const auto&) {
                   if (n > kTriangleFactorMaxN)
                     throw CapabilityError("triangle factor counting",
                                           "n <= " + std::to_string(kTriangleFactorMaxN));
                 }},
             spec.kind());
}

// Materializes a random subfamily of the h-edge graphs on n vertices.
inline std::vector<LabeledGraph> sample_random_subfamily(int n, std::int64_t h, double phat,
                                                         std::uint64_t seed) {
  // validates n, h and phat
  [[maybe_unused]] const FamilySpec spec = FamilySpec::random_subfamily(n, h, phat, seed);
  detail::check_random_subfamily_cap(n, h);
  std::vector<LabeledGraph> members;
  for_each_random_subfamily_member(n, h, phat, seed, [&](std::span<const Row> rows) {
    members.push_back(LabeledGraph::from_rows(n, {rows.begin(), rows.end()}));
  });
  return members;
}

}  // namespace spanlab
