#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "spanlab/counting.hpp"
#include "spanlab/enumerate.hpp"

using namespace spanlab;

TEST_CASE("Hamilton cycles in complete graphs") {
  for (int n = 3; n <= 12; ++n)
    CHECK(count_hamilton_cycles(LabeledGraph::complete(n)) == oracle::factorial(n - 1) / 2);
  CHECK(count_hamilton_cycles(LabeledGraph::complete(2)) == 0);
  for (int n = 2; n <= 10; ++n)
    CHECK(count_directed_hamilton_cycles(LabeledDigraph::complete(n)) == oracle::factorial(n - 1));
}

TEST_CASE("Hamilton cycle DP matches permutation scan on random hosts") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 6;
    const double p = 0.3 + 0.1 * (trial % 6);
    const auto g = oracle::random_graph(n, p, gen);
    REQUIRE(count_hamilton_cycles(g) == oracle::hamilton_cycles(g));
    const auto d = oracle::random_digraph(n, p, gen);
    REQUIRE(count_directed_hamilton_cycles(d) == oracle::directed_hamilton_cycles(d));
  }
}

TEST_CASE("triangle factor counts match permutation scan") {
  std::mt19937_64 gen(5);
  CHECK(count_triangle_factors(LabeledGraph::complete(6)) == 10);
  CHECK(count_triangle_factors(LabeledGraph::complete(9)) == 280);
  CHECK(count_triangle_factors(LabeledGraph::complete(7)) == 0);
  CHECK(count_directed_triangle_factors(LabeledDigraph::complete(6)) == 40);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = trial % 2 == 0 ? 6 : 9;
    const auto g = oracle::random_graph(n, 0.75, gen);
    REQUIRE(count_triangle_factors(g) == oracle::triangle_factors(g));
    const auto d = oracle::random_digraph(n, 0.7, gen);
    REQUIRE(count_directed_triangle_factors(d) == oracle::directed_triangle_factors(d));
  }
}

TEST_CASE("degree-constrained subgraph counts match subset scan") {
  std::mt19937_64 gen(17);
  CHECK(count_degree_subgraphs(LabeledGraph::complete(6), DegreeSequence::regular(6, 3)) == 70);
  CHECK(count_degree_subgraphs(LabeledGraph::complete(4), DegreeSequence({1, 1, 1, 1})) == 3);
  CHECK(count_degree_subgraphs(LabeledGraph::complete(5), DegreeSequence::regular(5, 2)) == 12);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 3;
    const auto host = oracle::random_graph(n, 0.8, gen);
    if (host.edge_count() > 15) continue;
    std::vector<int> d(static_cast<std::size_t>(n));
    std::uniform_int_distribution<int> deg(0, std::min(n - 1, 3));
    int sum = 0;
    for (auto& x : d) sum += (x = deg(gen));
    if (sum % 2 != 0) d[0] = d[0] == 0 ? 1 : d[0] - 1;
    REQUIRE(count_degree_subgraphs(host, DegreeSequence(d)) == oracle::degree_subgraphs(host, d));
  }
}

TEST_CASE("enumerated degree subgraphs are distinct and have the prescribed degrees") {
  const auto d = DegreeSequence({2, 2, 1, 1, 2, 2});
  const auto host = LabeledGraph::complete(6);
  std::set<std::vector<Row>> seen;
  for_each_degree_subgraph(host, d, [&](std::span<const Row> rows) {
    const auto g = LabeledGraph::from_rows(6, {rows.begin(), rows.end()});
    REQUIRE(degree_sequence_of(g) == d);
    seen.emplace(rows.begin(), rows.end());
  });
  CHECK(BigInt(seen.size()) == count_degree_subgraphs(host, d));
}

TEST_CASE("triangle-free subgraph counts match subset scan") {
  std::mt19937_64 gen(23);
  // 4-edge triangle-free graphs on 5 vertices: C(10,4) minus those with a triangle
  CHECK(count_triangle_free_subgraphs(LabeledGraph::complete(5), 4) ==
        oracle::triangle_free_subgraphs(LabeledGraph::complete(5), 4));
  for (int trial = 0; trial < 20; ++trial) {
    const auto host = oracle::random_graph(6, 0.6, gen);
    if (host.edge_count() > 14) continue;
    const std::size_t h = 2 + trial % 4;
    REQUIRE(count_triangle_free_subgraphs(host, static_cast<std::int64_t>(h)) ==
            oracle::triangle_free_subgraphs(host, h));
  }
}

TEST_CASE("counters refuse hosts beyond their caps") {
  CHECK_THROWS_AS(count_hamilton_cycles(LabeledGraph(kHamiltonMaxN + 1)), CapabilityError);
  CHECK_THROWS_AS(count_directed_hamilton_cycles(LabeledDigraph(kDirectedHamiltonMaxN + 1)),
                  CapabilityError);
  CHECK_THROWS_AS(count_triangle_factors(LabeledGraph(kTriangleFactorMaxN + 3)), CapabilityError);
  CHECK_THROWS_AS(count_degree_subgraphs(LabeledGraph::complete(16), DegreeSequence::regular(16, 2)),
                  CapabilityError);
  CHECK_THROWS_AS(count_degree_subgraphs(LabeledGraph::complete(14), DegreeSequence::regular(14, 4)),
                  CapabilityError);
  CHECK_THROWS_AS(count_triangle_free_subgraphs(LabeledGraph::complete(20), 10), CapabilityError);
  try {
    count_hamilton_cycles(LabeledGraph(30));
  } catch (const CapabilityError& e) {
    CHECK(e.cap() == "n <= 20");
  }
}

TEST_CASE("member enumeration sizes") {
  auto size_of = [](const FamilySpec& spec) {
    std::uint64_t k = 0;
    for_each_member(spec, [&](std::span<const Row>) { ++k; });
    return k;
  };
  CHECK(size_of(FamilySpec::hamilton(6)) == 60);
  CHECK(size_of(FamilySpec::directed_hamilton(5)) == 24);
  CHECK(size_of(FamilySpec::triangle_factor(9)) == 280);
  CHECK(size_of(FamilySpec::directed_triangle_factor(6)) == 40);
  CHECK(size_of(FamilySpec::all_h_edge(5, 3)) == 120);
}

TEST_CASE("combinations come out in colex order with matching ranks") {
  std::uint64_t expect = 0;
  std::vector<std::int64_t> prev;
  for_each_combination(8, 3, [&](std::uint64_t index, std::span<const std::int64_t> c) {
    REQUIRE(index == expect++);
    REQUIRE(colex_rank(c) == index);
    std::vector<std::int64_t> cur(c.begin(), c.end());
    if (!prev.empty())
      REQUIRE(std::lexicographical_compare(prev.rbegin(), prev.rend(), cur.rbegin(), cur.rend()));
    prev = cur;
  });
  CHECK(expect == 56);
}
