#pragma once

// Labeled graphs and digraphs on {0..n-1}, stored as one adjacency bitset
// (a single machine word) per vertex, so n <= 64.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spanlab/errors.hpp"

namespace spanlab {

using Vertex = int;
using Row = std::uint64_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr int kMaxVertices = 64;

inline constexpr Row bit(int v) { return Row{1} << v; }

inline constexpr Row low_mask(int n) { return n >= 64 ? ~Row{0} : bit(n) - 1; }

// Calls f(v) for every set bit v of `mask`, in increasing order.
template <class F>
inline void for_each_bit(Row mask, F&& f) {
  while (mask != 0) {
    f(std::countr_zero(mask));
    mask &= mask - 1;
  }
}

// Colex index of the unordered pair {u, v}; indices 0..N-1 enumerate all pairs.
inline constexpr std::int64_t pair_index(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::int64_t>(v) * (v - 1) / 2 + u;
}

inline Edge pair_from_index(std::int64_t k) {
  Vertex v = 1;
  while (static_cast<std::int64_t>(v) * (v + 1) / 2 <= k) ++v;
  return {static_cast<Vertex>(k - static_cast<std::int64_t>(v) * (v - 1) / 2), v};
}

inline constexpr std::int64_t pair_count(std::int64_t n) { return n * (n - 1) / 2; }

namespace detail {

inline void check_vertex_count(int n) {
  if (n < 1 || n > kMaxVertices)
    throw InputError("vertex count " + std::to_string(n) + " outside 1.." +
                     std::to_string(kMaxVertices));
}

inline void check_vertex(int n, Vertex v) {
  if (v < 0 || v >= n)
    throw InputError("vertex " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
}

inline std::size_t popcount_rows(std::span<const Row> rows) {
  std::size_t total = 0;
  for (Row r : rows) total += static_cast<std::size_t>(std::popcount(r));
  return total;
}

inline std::size_t common_bits(std::span<const Row> a, std::span<const Row> b) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

}  // namespace detail

class LabeledGraph {
 public:
  explicit LabeledGraph(int n) : n_(n) {
    detail::check_vertex_count(n);
    adj_.assign(static_cast<std::size_t>(n), 0);
  }

  LabeledGraph(int n, std::span<const Edge> edges) : LabeledGraph(n) {
    for (auto [u, v] : edges) {
      if (has_edge_checked(u, v))
        throw InputError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      add_edge(u, v);
    }
  }

  LabeledGraph(int n, std::initializer_list<Edge> edges)
      : LabeledGraph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  // Rows must be symmetric and loop-free.
  static LabeledGraph from_rows(int n, std::vector<Row> rows) {
    LabeledGraph g(n);
    if (rows.size() != static_cast<std::size_t>(n)) throw InputError("row count mismatch");
    for (int v = 0; v < n; ++v) {
      if ((rows[v] & ~low_mask(n)) != 0 || (rows[v] & bit(v)) != 0)
        throw InputError("adjacency row out of range or with loop");
      for_each_bit(rows[v], [&](int w) {
        if ((rows[w] & bit(v)) == 0) throw InputError("adjacency rows not symmetric");
      });
    }
    g.adj_ = std::move(rows);
    return g;
  }

  static LabeledGraph complete(int n) {
    LabeledGraph g(n);
    for (int v = 0; v < n; ++v) g.adj_[v] = low_mask(n) & ~bit(v);
    return g;
  }

  // Cycle visiting `order` in sequence and closing back to the first vertex.
  static LabeledGraph cycle(int n, std::span<const Vertex> order) {
    LabeledGraph g(n);
    for (std::size_t i = 0; i < order.size(); ++i)
      g.add_edge(order[i], order[(i + 1) % order.size()]);
    return g;
  }

  int n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return detail::popcount_rows(adj_) / 2; }
  std::span<const Row> rows() const noexcept { return adj_; }
  Row neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return std::popcount(neighbors(v)); }

  bool has_edge(Vertex u, Vertex v) const {
    return u != v && (adj_[static_cast<std::size_t>(u)] & bit(v)) != 0;
  }

  void add_edge(Vertex u, Vertex v) {
    detail::check_vertex(n_, u);
    detail::check_vertex(n_, v);
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
  }

  void remove_edge(Vertex u, Vertex v) {
    detail::check_vertex(n_, u);
    detail::check_vertex(n_, v);
    adj_[u] &= ~bit(v);
    adj_[v] &= ~bit(u);
  }

  // Edges {u, v} with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (int u = 0; u < n_; ++u)
      for_each_bit(adj_[u] & ~low_mask(u + 1), [&](int v) { out.emplace_back(u, v); });
    return out;
  }

  bool contains(const LabeledGraph& sub) const {
    if (sub.n_ != n_) return false;
    for (int v = 0; v < n_; ++v)
      if ((sub.adj_[v] & ~adj_[v]) != 0) return false;
    return true;
  }

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  bool has_edge_checked(Vertex u, Vertex v) const {
    detail::check_vertex(n_, u);
    detail::check_vertex(n_, v);
    return has_edge(u, v);
  }

  int n_;
  std::vector<Row> adj_;
};

class LabeledDigraph {
 public:
  explicit LabeledDigraph(int n) : n_(n) {
    detail::check_vertex_count(n);
    out_.assign(static_cast<std::size_t>(n), 0);
  }

  LabeledDigraph(int n, std::span<const Edge> arcs) : LabeledDigraph(n) {
    for (auto [u, v] : arcs) {
      detail::check_vertex(n, u);
      detail::check_vertex(n, v);
      if (has_arc(u, v))
        throw InputError("duplicate arc " + std::to_string(u) + " " + std::to_string(v));
      add_arc(u, v);
    }
  }

  LabeledDigraph(int n, std::initializer_list<Edge> arcs)
      : LabeledDigraph(n, std::span<const Edge>(arcs.begin(), arcs.size())) {}

  static LabeledDigraph complete(int n) {
    LabeledDigraph g(n);
    for (int v = 0; v < n; ++v) g.out_[v] = low_mask(n) & ~bit(v);
    return g;
  }

  static LabeledDigraph cycle(int n, std::span<const Vertex> order) {
    LabeledDigraph g(n);
    for (std::size_t i = 0; i < order.size(); ++i)
      g.add_arc(order[i], order[(i + 1) % order.size()]);
    return g;
  }

  int n() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return detail::popcount_rows(out_); }
  std::span<const Row> rows() const noexcept { return out_; }
  Row out_neighbors(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }

  Row in_neighbors(Vertex v) const {
    Row in = 0;
    for (int u = 0; u < n_; ++u)
      if ((out_[u] & bit(v)) != 0) in |= bit(u);
    return in;
  }

  bool has_arc(Vertex u, Vertex v) const {
    return u != v && (out_[static_cast<std::size_t>(u)] & bit(v)) != 0;
  }

  void add_arc(Vertex u, Vertex v) {
    detail::check_vertex(n_, u);
    detail::check_vertex(n_, v);
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
    out_[u] |= bit(v);
  }

  std::vector<Edge> arcs() const {
    std::vector<Edge> out;
    out.reserve(arc_count());
    for (int u = 0; u < n_; ++u) for_each_bit(out_[u], [&](int v) { out.emplace_back(u, v); });
    return out;
  }

  bool contains(const LabeledDigraph& sub) const {
    if (sub.n_ != n_) return false;
    for (int v = 0; v < n_; ++v)
      if ((sub.out_[v] & ~out_[v]) != 0) return false;
    return true;
  }

  friend bool operator==(const LabeledDigraph&, const LabeledDigraph&) = default;

 private:
  int n_;
  std::vector<Row> out_;
};

// Degree sequence d_1..d_n with the moments used by the degree-sequence family.
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<int> d) : d_(std::move(d)) {
    if (d_.empty()) throw DomainError("empty degree sequence");
    const int n = static_cast<int>(d_.size());
    for (int x : d_) {
      if (x < 0 || x > n - 1)
        throw DomainError("degree " + std::to_string(x) + " outside 0.." + std::to_string(n - 1));
      m1_ += x;
      m2_ += static_cast<std::int64_t>(x) * x;
      max_ = std::max(max_, x);
    }
    if (m1_ % 2 != 0) throw DomainError("degree sum is odd");
  }

  static DegreeSequence regular(int n, int d) {
    return DegreeSequence(std::vector<int>(static_cast<std::size_t>(n), d));
  }

  int n() const noexcept { return static_cast<int>(d_.size()); }
  std::span<const int> degrees() const noexcept { return d_; }
  int operator[](std::size_t i) const { return d_[i]; }
  std::int64_t h() const noexcept { return m1_ / 2; }
  int max_degree() const noexcept { return max_; }
  std::int64_t m1() const noexcept { return m1_; }
  std::int64_t m2() const noexcept { return m2_; }

  friend bool operator==(const DegreeSequence& a, const DegreeSequence& b) {
    return a.d_ == b.d_;
  }

 private:
  std::vector<int> d_;
  std::int64_t m1_ = 0;
  std::int64_t m2_ = 0;
  int max_ = 0;
};

inline std::size_t edge_intersection_size(const LabeledGraph& g1, const LabeledGraph& g2) {
  if (g1.n() != g2.n()) throw InputError("edge intersection of graphs with different n");
  return detail::common_bits(g1.rows(), g2.rows()) / 2;
}

inline std::size_t edge_intersection_size(const LabeledDigraph& g1, const LabeledDigraph& g2) {
  if (g1.n() != g2.n()) throw InputError("arc intersection of digraphs with different n");
  return detail::common_bits(g1.rows(), g2.rows());
}

// Number of paths with two edges: sum over vertices of C(deg, 2).
inline std::int64_t two_path_count(const LabeledGraph& g) {
  std::int64_t total = 0;
  for (int v = 0; v < g.n(); ++v) {
    const std::int64_t d = g.degree(v);
    total += d * (d - 1) / 2;
  }
  return total;
}

inline DegreeSequence degree_sequence_of(const LabeledGraph& g) {
  std::vector<int> d(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) d[v] = g.degree(v);
  return DegreeSequence(std::move(d));
}

// Text format: a header line "n m", then m lines "u v" (0-based).
namespace detail {

inline std::vector<Edge> read_pairs(std::istream& in, int& n) {
  long long nn = 0, m = 0;
  if (!(in >> nn >> m)) throw InputError("graph file: missing 'n m' header");
  if (nn < 1 || nn > kMaxVertices) throw InputError("graph file: n out of range");
  if (m < 0) throw InputError("graph file: negative edge count");
  n = static_cast<int>(nn);
  std::vector<Edge> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v))
      throw InputError("graph file: expected " + std::to_string(m) + " pairs, got " +
                       std::to_string(i));
    if (u < 0 || v < 0 || u >= nn || v >= nn) throw InputError("graph file: vertex out of range");
    pairs.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::string extra;
  if (in >> extra) throw InputError("graph file: trailing data '" + extra + "'");
  return pairs;
}

}  // namespace detail

inline LabeledGraph read_graph(std::istream& in) {
  int n = 0;
  auto pairs = detail::read_pairs(in, n);
  return LabeledGraph(n, pairs);
}

inline LabeledDigraph read_digraph(std::istream& in) {
  int n = 0;
  auto pairs = detail::read_pairs(in, n);
  return LabeledDigraph(n, pairs);
}

inline void write_graph(std::ostream& out, const LabeledGraph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline void write_digraph(std::ostream& out, const LabeledDigraph& g) {
  out << g.n() << ' ' << g.arc_count() << '\n';
  for (auto [u, v] : g.arcs()) out << u << ' ' << v << '\n';
}

}  // namespace spanlab
