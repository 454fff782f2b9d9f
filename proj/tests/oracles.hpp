#pragma once

// Slow reference implementations used as test oracles. They share no code
// paths with the library's counting algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "spanlab/graph.hpp"

namespace oracle {

using spanlab::LabeledDigraph;
using spanlab::LabeledGraph;

inline LabeledGraph random_graph(int n, double p, std::mt19937_64& gen) {
  std::bernoulli_distribution coin(p);
  LabeledGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(gen)) g.add_edge(u, v);
  return g;
}

inline LabeledDigraph random_digraph(int n, double p, std::mt19937_64& gen) {
  std::bernoulli_distribution coin(p);
  LabeledDigraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(gen)) g.add_arc(u, v);
  return g;
}

// Every permutation of 1..n-1 after 0 is one directed traversal.
inline std::uint64_t hamilton_cycles(const LabeledGraph& g) {
  const int n = g.n();
  if (n < 3) return 0;
  std::vector<int> p(static_cast<std::size_t>(n - 1));
  std::iota(p.begin(), p.end(), 1);
  std::uint64_t count = 0;
  do {
    bool ok = g.has_edge(0, p.front()) && g.has_edge(p.back(), 0);
    for (std::size_t i = 0; ok && i + 1 < p.size(); ++i) ok = g.has_edge(p[i], p[i + 1]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count / 2;
}

inline std::uint64_t directed_hamilton_cycles(const LabeledDigraph& g) {
  const int n = g.n();
  if (n < 2) return 0;
  std::vector<int> p(static_cast<std::size_t>(n - 1));
  std::iota(p.begin(), p.end(), 1);
  std::uint64_t count = 0;
  do {
    bool ok = g.has_arc(0, p.front()) && g.has_arc(p.back(), 0);
    for (std::size_t i = 0; ok && i + 1 < p.size(); ++i) ok = g.has_arc(p[i], p[i + 1]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

// Permutations read as consecutive triples; each factor appears (3!)^k k! times.
inline std::uint64_t triangle_factors(const LabeledGraph& g) {
  const int n = g.n();
  if (n % 3 != 0) return 0;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; ok && i < n; i += 3)
      ok = g.has_edge(p[i], p[i + 1]) && g.has_edge(p[i + 1], p[i + 2]) && g.has_edge(p[i], p[i + 2]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  const int k = n / 3;
  std::uint64_t sym = factorial(k);
  for (int i = 0; i < k; ++i) sym *= 6;
  return count / sym;
}

// Consecutive triples read as directed 3-cycles a->b->c->a; each factor
// appears 3^k k! times.
inline std::uint64_t directed_triangle_factors(const LabeledDigraph& g) {
  const int n = g.n();
  if (n % 3 != 0) return 0;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int i = 0; ok && i < n; i += 3)
      ok = g.has_arc(p[i], p[i + 1]) && g.has_arc(p[i + 1], p[i + 2]) && g.has_arc(p[i + 2], p[i]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  const int k = n / 3;
  std::uint64_t sym = factorial(k);
  for (int i = 0; i < k; ++i) sym *= 3;
  return count / sym;
}

// All edge subsets of the host, filtered.
template <class Keep>
std::uint64_t count_edge_subsets(const LabeledGraph& host, Keep keep) {
  const auto edges = host.edges();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
    std::vector<std::pair<int, int>> chosen;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if ((mask >> e) & 1) chosen.push_back(edges[e]);
    count += keep(chosen);
  }
  return count;
}

inline std::uint64_t degree_subgraphs(const LabeledGraph& host, const std::vector<int>& d) {
  return count_edge_subsets(host, [&](const std::vector<std::pair<int, int>>& es) {
    std::vector<int> deg(d.size(), 0);
    for (auto [u, v] : es) {
      ++deg[u];
      ++deg[v];
    }
    return deg == d;
  });
}

inline std::uint64_t triangle_free_subgraphs(const LabeledGraph& host, std::size_t h) {
  return count_edge_subsets(host, [&](const std::vector<std::pair<int, int>>& es) {
    if (es.size() != h) return false;
    std::set<std::pair<int, int>> s(es.begin(), es.end());
    for (auto [u, v] : es)
      for (int w = 0; w < host.n(); ++w)
        if (s.contains({std::min(u, w), std::max(u, w)}) && s.contains({std::min(v, w), std::max(v, w)}))
          return false;
    return true;
  });
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Standard normal quantile by bisection on the CDF.
inline double normal_quantile(double q) {
  double lo = -40, hi = 40;
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (normal_cdf(mid) < q ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace oracle
