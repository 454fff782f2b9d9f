#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>

#include "spanlab/errors.hpp"
#include "spanlab/graph.hpp"

namespace spanlab {

namespace family {

// All graphs with h edges.
struct AllHEdge {
  std::int64_t h;
};
// Each h-edge graph kept independently with probability phat.
struct RandomSubfamily {
  std::int64_t h;
  double phat;
  std::uint64_t seed;
};
// Graphs with a prescribed degree sequence.
struct DegreeSeq {
  DegreeSequence d;
};
// Triangle-free graphs with h edges.
struct TriangleFreeHEdge {
  std::int64_t h;
};
struct HamiltonCycle {};
struct DirectedHamiltonCycle {};
// n/3 vertex-disjoint triangles.
struct TriangleFactor {};
// n/3 vertex-disjoint directed 3-cycles.
struct DirectedTriangleFactor {};

}  // namespace family

using FamilyKind =
    std::variant<family::AllHEdge, family::RandomSubfamily, family::DegreeSeq,
                 family::TriangleFreeHEdge, family::HamiltonCycle, family::DirectedHamiltonCycle,
                 family::TriangleFactor, family::DirectedTriangleFactor>;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// A family of labeled (di)graphs on {0..n-1}, all with the same edge count.
class FamilySpec {
 public:
  FamilySpec(int n, FamilyKind kind) : n_(n), kind_(std::move(kind)) { validate(); }

  static FamilySpec all_h_edge(int n, std::int64_t h) { return {n, family::AllHEdge{h}}; }
  static FamilySpec random_subfamily(int n, std::int64_t h, double phat, std::uint64_t seed) {
    return {n, family::RandomSubfamily{h, phat, seed}};
  }
  static FamilySpec degree_sequence(DegreeSequence d) {
    const int n = d.n();
    return {n, family::DegreeSeq{std::move(d)}};
  }
  static FamilySpec triangle_free(int n, std::int64_t h) {
    return {n, family::TriangleFreeHEdge{h}};
  }
  static FamilySpec hamilton(int n) { return {n, family::HamiltonCycle{}}; }
  static FamilySpec directed_hamilton(int n) { return {n, family::DirectedHamiltonCycle{}}; }
  static FamilySpec triangle_factor(int n) { return {n, family::TriangleFactor{}}; }
  static FamilySpec directed_triangle_factor(int n) {
    return {n, family::DirectedTriangleFactor{}};
  }

  int n() const noexcept { return n_; }
  const FamilyKind& kind() const noexcept { return kind_; }

  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(kind_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(kind_);
  }

  bool directed() const noexcept {
    return is<family::DirectedHamiltonCycle>() || is<family::DirectedTriangleFactor>();
  }

  // Relabeling the vertices acts transitively on these families.
  bool vertex_transitive() const noexcept {
    return is<family::AllHEdge>() || is<family::HamiltonCycle>() ||
           is<family::DirectedHamiltonCycle>() || is<family::TriangleFactor>() ||
           is<family::DirectedTriangleFactor>();
  }

  // Common edge (arc) count h(n) of every member.
  std::int64_t edge_count() const {
    return std::visit(
        overloaded{[](const family::AllHEdge& f) { return f.h; },
                   [](const family::RandomSubfamily& f) { return f.h; },
                   [](const family::DegreeSeq& f) { return f.d.h(); },
                   [](const family::TriangleFreeHEdge& f) { return f.h; },
                   [this](const auto&) { return static_cast<std::int64_t>(n_); }},
        kind_);
  }

  // Number of possible edges: N = C(n,2), or 2N ordered pairs when directed.
  std::int64_t universe() const noexcept {
    const std::int64_t N = pair_count(n_);
    return directed() ? 2 * N : N;
  }

  std::string name() const {
    return std::visit(overloaded{[](const family::AllHEdge&) { return "all-h-edge"; },
                                 [](const family::RandomSubfamily&) { return "random-subfamily"; },
                                 [](const family::DegreeSeq&) { return "degree-seq"; },
                                 [](const family::TriangleFreeHEdge&) { return "triangle-free"; },
                                 [](const family::HamiltonCycle&) { return "hamilton"; },
                                 [](const family::DirectedHamiltonCycle&) { return "dir-hamilton"; },
                                 [](const family::TriangleFactor&) { return "triangle-factor"; },
                                 [](const family::DirectedTriangleFactor&) {
                                   return "dir-triangle-factor";
                                 }},
                      kind_);
  }

 private:
  void validate() const {
    if (n_ < 1) throw DomainError("family needs n >= 1");
    const std::int64_t N = pair_count(n_);
    auto check_h = [&](std::int64_t h) {
      if (h < 0 || h > N)
        throw DomainError("h = " + std::to_string(h) + " outside 0..C(n,2) = " + std::to_string(N));
    };
    std::visit(overloaded{
                   [&](const family::AllHEdge& f) { check_h(f.h); },
                   [&](const family::RandomSubfamily& f) {
                     check_h(f.h);
                     if (!(f.phat >= 0.0 && f.phat <= 1.0)) throw DomainError("phat outside [0,1]");
                   },
                   [&](const family::DegreeSeq& f) {
                     if (f.d.n() != n_) throw DomainError("degree sequence length differs from n");
                   },
                   [&](const family::TriangleFreeHEdge& f) { check_h(f.h); },
                   [&](const family::HamiltonCycle&) {
                     if (n_ < 3) throw DomainError("Hamilton cycles need n >= 3");
                   },
                   [&](const family::DirectedHamiltonCycle&) {
                     if (n_ < 2) throw DomainError("directed Hamilton cycles need n >= 2");
                   },
                   [&](const family::TriangleFactor&) {
                     if (n_ % 3 != 0) throw DomainError("triangle factor needs n divisible by 3");
                   },
                   [&](const family::DirectedTriangleFactor&) {
                     if (n_ % 3 != 0) throw DomainError("triangle factor needs n divisible by 3");
                   }},
               kind_);
  }

  int n_;
  FamilyKind kind_;
};

}  // namespace spanlab
