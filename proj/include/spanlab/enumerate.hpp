#pragma once

// Streaming enumeration of every member of a family as adjacency rows
// (symmetric rows for graphs, out-rows for digraphs).

#include <algorithm>
#include <array>
#include <numeric>
#include <span>
#include <vector>

#include "spanlab/bigint.hpp"
#include "spanlab/counting.hpp"
#include "spanlab/family.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/rng.hpp"

namespace spanlab {

using Triple = std::array<Vertex, 3>;

// Calls f(colex_index, combination) for every h-subset of {0..universe-1},
// in colex order.
template <class F>
void for_each_combination(std::int64_t universe, std::int64_t h, F&& f) {
  if (h < 0 || h > universe) return;
  std::vector<std::int64_t> c(static_cast<std::size_t>(h));
  std::iota(c.begin(), c.end(), std::int64_t{0});
  std::uint64_t index = 0;
  while (true) {
    f(index++, std::span<const std::int64_t>(c));
    std::size_t i = 0;
    while (i < c.size()) {
      const std::int64_t limit = i + 1 < c.size() ? c[i + 1] : universe;
      if (c[i] + 1 < limit) break;
      ++i;
    }
    if (i == c.size()) return;
    ++c[i];
    for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<std::int64_t>(j);
  }
}

// Position of a sorted combination in colex order.
inline BigInt colex_rank(std::span<const std::int64_t> c) {
  BigInt rank = 0;
  for (std::size_t i = 0; i < c.size(); ++i) rank += binomial(c[i], static_cast<std::int64_t>(i) + 1);
  return rank;
}

inline void rows_from_pairs(std::span<const std::int64_t> pairs, std::vector<Row>& rows) {
  std::fill(rows.begin(), rows.end(), 0);
  for (std::int64_t k : pairs) {
    const auto [u, v] = pair_from_index(k);
    rows[u] |= bit(v);
    rows[v] |= bit(u);
  }
}

// Every labeled h-edge graph on n vertices, in colex order of edge sets.
template <class F>
void for_each_h_edge_graph(int n, std::int64_t h, F&& f) {
  std::vector<Row> rows(static_cast<std::size_t>(n), 0);
  for_each_combination(pair_count(n), h, [&](std::uint64_t index, std::span<const std::int64_t> c) {
    rows_from_pairs(c, rows);
    f(index, std::span<const Row>(rows));
  });
}

// Cycles through 0 as permutations of 1..n-1; undirected cycles keep one of
// the two orientations (first successor smaller than last).
template <class F>
void for_each_hamilton_cycle(int n, bool directed, F&& f) {
  if (n < 2 || (!directed && n < 3)) return;
  std::vector<Vertex> perm(static_cast<std::size_t>(n - 1));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Row> rows(static_cast<std::size_t>(n), 0);
  do {
    if (!directed && perm.front() > perm.back()) continue;
    std::fill(rows.begin(), rows.end(), 0);
    Vertex prev = 0;
    for (Vertex v : perm) {
      rows[prev] |= bit(v);
      if (!directed) rows[v] |= bit(prev);
      prev = v;
    }
    rows[prev] |= bit(0);
    if (!directed) rows[0] |= bit(prev);
    f(std::span<const Row>(rows));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

namespace detail {

template <class F>
void triangle_partitions(Row remaining, std::vector<Triple>& parts, F& f) {
  if (remaining == 0) {
    f(std::span<const Triple>(parts));
    return;
  }
  const int v = std::countr_zero(remaining);
  const Row rest = remaining & ~bit(v);
  for_each_bit(rest, [&](int a) {
    for_each_bit(rest & ~low_mask(a + 1), [&](int b) {
      parts.push_back({v, a, b});
      triangle_partitions(rest & ~bit(a) & ~bit(b), parts, f);
      parts.pop_back();
    });
  });
}

}  // namespace detail

// Every partition of {0..n-1} into triples {v<a<b}, each list ordered by its
// smallest vertex.
template <class F>
void for_each_triangle_partition(int n, F&& f) {
  if (n % 3 != 0) return;
  std::vector<Triple> parts;
  parts.reserve(static_cast<std::size_t>(n / 3));
  detail::triangle_partitions(low_mask(n), parts, f);
}

template <class F>
void for_each_triangle_factor(int n, F&& f) {
  std::vector<Row> rows(static_cast<std::size_t>(n), 0);
  for_each_triangle_partition(n, [&](std::span<const Triple> parts) {
    std::fill(rows.begin(), rows.end(), 0);
    for (const auto& [a, b, c] : parts) {
      rows[a] |= bit(b) | bit(c);
      rows[b] |= bit(a) | bit(c);
      rows[c] |= bit(a) | bit(b);
    }
    f(std::span<const Row>(rows));
  });
}

// Each triple {a<b<c} oriented either a->b->c->a or a->c->b->a.
template <class F>
void for_each_directed_triangle_factor(int n, F&& f) {
  std::vector<Row> rows(static_cast<std::size_t>(n), 0);
  for_each_triangle_partition(n, [&](std::span<const Triple> parts) {
    const std::size_t k = parts.size();
    for (std::uint64_t orient = 0; orient < (std::uint64_t{1} << k); ++orient) {
      std::fill(rows.begin(), rows.end(), 0);
      for (std::size_t t = 0; t < k; ++t) {
        auto [a, b, c] = parts[t];
        if (((orient >> t) & 1) != 0) std::swap(b, c);
        rows[a] |= bit(b);
        rows[b] |= bit(c);
        rows[c] |= bit(a);
      }
      f(std::span<const Row>(rows));
    }
  });
}

// Members of a random subfamily: member i of the colex order is kept when its
// keyed uniform deviate falls below phat.
template <class F>
void for_each_random_subfamily_member(int n, std::int64_t h, double phat, std::uint64_t seed,
                                      F&& f) {
  for_each_h_edge_graph(n, h, [&](std::uint64_t index, std::span<const Row> rows) {
    if (keyed_uniform(seed, index) < phat) f(rows);
  });
}

// Streams every member of `spec` (requires n <= 64 and per-family caps).
template <class F>
void for_each_member(const FamilySpec& spec, F&& f) {
  const int n = spec.n();
  if (n > kMaxVertices) throw CapabilityError("member enumeration", "n <= 64");
  std::visit(overloaded{
                 [&](const family::AllHEdge& a) {
                   for_each_h_edge_graph(n, a.h,
                                         [&](std::uint64_t, std::span<const Row> rows) { f(rows); });
                 },
                 [&](const family::RandomSubfamily& r) {
                   for_each_random_subfamily_member(n, r.h, r.phat, r.seed, f);
                 },
                 [&](const family::DegreeSeq& d) {
                   for_each_degree_subgraph(LabeledGraph::complete(n), d.d, f);
                 },
                 [&](const family::TriangleFreeHEdge& t) {
                   for_each_triangle_free_subgraph(LabeledGraph::complete(n), t.h, f);
                 },
                 [&](const family::HamiltonCycle&) { for_each_hamilton_cycle(n, false, f); },
                 [&](const family::DirectedHamiltonCycle&) { for_each_hamilton_cycle(n, true, f); },
                 [&](const family::TriangleFactor&) { for_each_triangle_factor(n, f); },
                 [&](const family::DirectedTriangleFactor&) {
                   for_each_directed_triangle_factor(n, f);
                 }},
             spec.kind());
}

}  // namespace spanlab
