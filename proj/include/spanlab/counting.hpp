#pragma once

// Exact counters for family members contained in a host (di)graph.

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "spanlab/bigint.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/graph.hpp"

namespace spanlab {

inline constexpr int kHamiltonMaxN = 20;
inline constexpr int kDirectedHamiltonMaxN = 20;
inline constexpr int kTriangleFactorMaxN = 24;
inline constexpr int kDegreeSeqMaxN = 14;
inline constexpr std::int64_t kDegreeSeqMaxH = 24;
inline constexpr std::int64_t kTriangleFreeMaxNodes = 100'000'000;

namespace detail {

// Paths from vertex 0 over subsets of {1..n-1}, closed back to 0.
// `out` gives successor masks (symmetric rows for undirected hosts).
inline std::uint64_t closed_walk_dp(int n, std::span<const Row> out) {
  if (n == 1) return 0;
  const int k = n - 1;  // vertex v >= 1 maps to bit v-1
  std::vector<Row> succ(static_cast<std::size_t>(k));
  for (int v = 1; v < n; ++v) succ[v - 1] = out[v] >> 1;
  const Row from_zero = out[0] >> 1;
  Row into_zero = 0;
  for (int v = 1; v < n; ++v)
    if ((out[v] & 1) != 0) into_zero |= bit(v - 1);

  const std::size_t masks = std::size_t{1} << k;
  std::vector<std::uint64_t> dp(masks * static_cast<std::size_t>(k), 0);
  auto at = [&](std::size_t mask, int v) -> std::uint64_t& {
    return dp[mask * static_cast<std::size_t>(k) + static_cast<std::size_t>(v)];
  };
  for_each_bit(from_zero, [&](int v) { at(bit(v), v) = 1; });
  const Row full = low_mask(k);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    if (mask == full) break;
    for_each_bit(static_cast<Row>(mask), [&](int v) {
      const std::uint64_t ways = at(mask, v);
      if (ways == 0) return;
      for_each_bit(succ[v] & ~static_cast<Row>(mask),
                   [&](int w) { at(mask | bit(w), w) += ways; });
    });
  }
  std::uint64_t total = 0;
  for_each_bit(into_zero, [&](int v) { total += at(full, v); });
  return total;
}

}  // namespace detail

// Hamilton cycles of an undirected host; bitmask DP anchored at vertex 0.
inline std::uint64_t count_hamilton_cycles(const LabeledGraph& host) {
  if (host.n() > kHamiltonMaxN)
    throw CapabilityError("Hamilton cycle counting", "n <= " + std::to_string(kHamiltonMaxN));
  if (host.n() < 3) return 0;
  // each undirected cycle is traversed in both directions
  return detail::closed_walk_dp(host.n(), host.rows()) / 2;
}

inline std::uint64_t count_directed_hamilton_cycles(const LabeledDigraph& host) {
  if (host.n() > kDirectedHamiltonMaxN)
    throw CapabilityError("directed Hamilton cycle counting",
                          "n <= " + std::to_string(kDirectedHamiltonMaxN));
  if (host.n() < 2) return 0;
  return detail::closed_walk_dp(host.n(), host.rows());
}

namespace detail {

// Covers the lowest uncovered vertex with a triangle each step. `weight(v,a,b)`
// returns how many member triangles on {v,a,b} the host offers (0 = none).
template <class Weight>
class TriangleCoverCounter {
 public:
  TriangleCoverCounter(int n, Weight weight) : n_(n), weight_(std::move(weight)) {}

  std::uint64_t count() { return ways(low_mask(n_)); }

 private:
  std::uint64_t ways(Row remaining) {
    if (remaining == 0) return 1;
    if (auto it = memo_.find(remaining); it != memo_.end()) return it->second;
    const int v = std::countr_zero(remaining);
    const Row rest = remaining & ~bit(v);
    std::uint64_t total = 0;
    for_each_bit(rest, [&](int a) {
      for_each_bit(rest & ~low_mask(a + 1), [&](int b) {
        const std::uint64_t w = weight_(v, a, b);
        if (w != 0) total += w * ways(rest & ~bit(a) & ~bit(b));
      });
    });
    memo_.emplace(remaining, total);
    return total;
  }

  int n_;
  Weight weight_;
  std::unordered_map<Row, std::uint64_t> memo_;
};

}  // namespace detail

inline std::uint64_t count_triangle_factors(const LabeledGraph& host) {
  if (host.n() > kTriangleFactorMaxN)
    throw CapabilityError("triangle factor counting", "n <= " + std::to_string(kTriangleFactorMaxN));
  if (host.n() % 3 != 0) return 0;
  auto weight = [&host](int v, int a, int b) -> std::uint64_t {
    return host.has_edge(v, a) && host.has_edge(v, b) && host.has_edge(a, b) ? 1 : 0;
  };
  return detail::TriangleCoverCounter(host.n(), weight).count();
}

// Each vertex triple contributes the number of directed 3-cycles the host has on it.
inline std::uint64_t count_directed_triangle_factors(const LabeledDigraph& host) {
  if (host.n() > kTriangleFactorMaxN)
    throw CapabilityError("directed triangle factor counting",
                          "n <= " + std::to_string(kTriangleFactorMaxN));
  if (host.n() % 3 != 0) return 0;
  auto weight = [&host](int v, int a, int b) -> std::uint64_t {
    const bool forward = host.has_arc(v, a) && host.has_arc(a, b) && host.has_arc(b, v);
    const bool backward = host.has_arc(v, b) && host.has_arc(b, a) && host.has_arc(a, v);
    return static_cast<std::uint64_t>(forward) + static_cast<std::uint64_t>(backward);
  };
  return detail::TriangleCoverCounter(host.n(), weight).count();
}

namespace detail {

inline void check_degree_caps(const DegreeSequence& d) {
  if (d.n() > kDegreeSeqMaxN || d.h() > kDegreeSeqMaxH)
    throw CapabilityError("degree-sequence subgraph counting",
                          "n <= " + std::to_string(kDegreeSeqMaxN) +
                              " and h <= " + std::to_string(kDegreeSeqMaxH));
}

// Vertex-by-vertex backtracking: vertex i picks its remaining neighbors among
// later vertices. With `Memo` the count is cached on (i, remaining degrees).
class DegreeSubgraphSearch {
 public:
  DegreeSubgraphSearch(const LabeledGraph& host, const DegreeSequence& d)
      : host_(host), n_(host.n()), rem_(d.degrees().begin(), d.degrees().end()) {}

  unsigned __int128 count() { return count_from(0); }

  // Calls f(rows) for every subgraph of the host with the prescribed degrees.
  template <class F>
  void enumerate(F&& f) {
    rows_.assign(static_cast<std::size_t>(n_), 0);
    enumerate_from(0, f);
  }

 private:
  Row candidates(int i) const {
    Row cand = 0;
    for_each_bit(host_.neighbors(i) & ~low_mask(i + 1), [&](int j) {
      if (rem_[j] > 0) cand |= bit(j);
    });
    return cand;
  }

  std::uint64_t key(int i) const {
    std::uint64_t k = static_cast<std::uint64_t>(i);
    for (int j = i; j < n_; ++j) k = (k << 4) | static_cast<std::uint64_t>(rem_[j]);
    return k;
  }

  // Distributes `need` edges from vertex i over candidate bits >= `from`.
  template <class Leaf>
  void choose(int i, Row cand, int need, Leaf& leaf) {
    if (need == 0) {
      leaf();
      return;
    }
    if (std::popcount(cand) < need) return;
    const int j = std::countr_zero(cand);
    const Row rest = cand & (cand - 1);
    --rem_[j];
    rows_pending_.push_back(j);
    choose(i, rest, need - 1, leaf);
    rows_pending_.pop_back();
    ++rem_[j];
    choose(i, rest, need, leaf);
  }

  unsigned __int128 count_from(int i) {
    while (i < n_ && rem_[i] == 0) ++i;
    if (i == n_) return 1;
    const std::uint64_t k = key(i);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    const int need = rem_[i];
    unsigned __int128 total = 0;
    rem_[i] = 0;
    auto leaf = [&] { total += count_from(i + 1); };
    choose(i, candidates(i), need, leaf);
    rem_[i] = need;
    memo_.emplace(k, total);
    return total;
  }

  template <class F>
  void enumerate_from(int i, F& f) {
    while (i < n_ && rem_[i] == 0) ++i;
    if (i == n_) {
      f(std::span<const Row>(rows_));
      return;
    }
    const int need = rem_[i];
    rem_[i] = 0;
    const std::size_t base = rows_pending_.size();
    auto leaf = [&] {
      for (std::size_t t = base; t < rows_pending_.size(); ++t) {
        const int j = rows_pending_[t];
        rows_[i] |= bit(j);
        rows_[j] |= bit(i);
      }
      enumerate_from(i + 1, f);
      for (std::size_t t = base; t < rows_pending_.size(); ++t) {
        const int j = rows_pending_[t];
        rows_[i] &= ~bit(j);
        rows_[j] &= ~bit(i);
      }
    };
    choose(i, candidates(i), need, leaf);
    rem_[i] = need;
  }

  const LabeledGraph& host_;
  int n_;
  std::vector<int> rem_;
  std::vector<Row> rows_;
  std::vector<int> rows_pending_;
  std::unordered_map<std::uint64_t, unsigned __int128> memo_;
};

}  // namespace detail

// Spanning subgraphs of the host with degree sequence d.
inline BigInt count_degree_subgraphs(const LabeledGraph& host, const DegreeSequence& d) {
  if (host.n() != d.n()) throw InputError("degree sequence length differs from host n");
  detail::check_degree_caps(d);
  return to_bigint(detail::DegreeSubgraphSearch(host, d).count());
}

template <class F>
void for_each_degree_subgraph(const LabeledGraph& host, const DegreeSequence& d, F&& f) {
  if (host.n() != d.n()) throw InputError("degree sequence length differs from host n");
  detail::check_degree_caps(d);
  detail::DegreeSubgraphSearch(host, d).enumerate(f);
}

namespace detail {

inline void check_triangle_free_caps(std::size_t host_edges, std::int64_t h) {
  if (binomial(static_cast<std::int64_t>(host_edges), h) > kTriangleFreeMaxNodes)
    throw CapabilityError("triangle-free subgraph enumeration",
                          "C(host edges, h) <= " + std::to_string(kTriangleFreeMaxNodes));
}

// h-subsets of the host's edges, rejecting a branch as soon as a triangle closes.
template <class F>
void triangle_free_search(const std::vector<Edge>& edges, std::size_t start, std::int64_t need,
                          std::vector<Row>& rows, F& f) {
  if (need == 0) {
    f(std::span<const Row>(rows));
    return;
  }
  for (std::size_t e = start; e + static_cast<std::size_t>(need) <= edges.size(); ++e) {
    const auto [u, v] = edges[e];
    if ((rows[u] & rows[v]) != 0) continue;
    rows[u] |= bit(v);
    rows[v] |= bit(u);
    triangle_free_search(edges, e + 1, need - 1, rows, f);
    rows[u] &= ~bit(v);
    rows[v] &= ~bit(u);
  }
}

}  // namespace detail

template <class F>
void for_each_triangle_free_subgraph(const LabeledGraph& host, std::int64_t h, F&& f) {
  const auto edges = host.edges();
  detail::check_triangle_free_caps(edges.size(), h);
  std::vector<Row> rows(static_cast<std::size_t>(host.n()), 0);
  detail::triangle_free_search(edges, 0, h, rows, f);
}

inline std::uint64_t count_triangle_free_subgraphs(const LabeledGraph& host, std::int64_t h) {
  std::uint64_t total = 0;
  for_each_triangle_free_subgraph(host, h, [&](std::span<const Row>) { ++total; });
  return total;
}

}  // namespace spanlab
