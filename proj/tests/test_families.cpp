#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "spanlab/families.hpp"

using namespace spanlab;

namespace {

std::uint64_t enumerated_size(const FamilySpec& spec) {
  std::uint64_t k = 0;
  for_each_member(spec, [&](std::span<const Row>) { ++k; });
  return k;
}

std::vector<FamilySpec> small_families() {
  return {FamilySpec::all_h_edge(5, 3),
          FamilySpec::random_subfamily(5, 3, 0.4, 99),
          FamilySpec::degree_sequence(DegreeSequence({2, 2, 1, 1, 2})),
          FamilySpec::triangle_free(5, 5),
          FamilySpec::hamilton(6),
          FamilySpec::directed_hamilton(5),
          FamilySpec::triangle_factor(6),
          FamilySpec::directed_triangle_factor(6)};
}

}  // namespace

TEST_CASE("closed-form cardinalities agree with enumeration") {
  for (int n = 3; n <= 8; ++n) CHECK(*cardinality(FamilySpec::hamilton(n)).exact == enumerated_size(FamilySpec::hamilton(n)));
  for (int n = 2; n <= 7; ++n)
    CHECK(*cardinality(FamilySpec::directed_hamilton(n)).exact ==
          enumerated_size(FamilySpec::directed_hamilton(n)));
  for (int n : {3, 6, 9, 12})
    CHECK(*cardinality(FamilySpec::triangle_factor(n)).exact ==
          enumerated_size(FamilySpec::triangle_factor(n)));
  for (int n : {3, 6, 9})
    CHECK(*cardinality(FamilySpec::directed_triangle_factor(n)).exact ==
          enumerated_size(FamilySpec::directed_triangle_factor(n)));
  CHECK(*cardinality(FamilySpec::all_h_edge(6, 4)).exact == 1365);
  CHECK(cardinality(FamilySpec::triangle_factor(15)).exact == BigInt(1401400));
}

TEST_CASE("every family: members are members, counted in K_n equals |S|") {
  for (const auto& spec : small_families()) {
    INFO(spec.name());
    const BigInt size = *cardinality(spec).exact;
    CHECK(size == enumerated_size(spec));
    for_each_member(spec, [&](std::span<const Row> rows) {
      if (spec.directed()) {
        LabeledDigraph g(spec.n());
        for (int u = 0; u < spec.n(); ++u) for_each_bit(rows[u], [&](int v) { g.add_arc(u, v); });
        REQUIRE(is_member(spec, g));
      } else {
        REQUIRE(is_member(spec, LabeledGraph::from_rows(spec.n(), {rows.begin(), rows.end()})));
      }
    });
    if (spec.directed()) CHECK(count_in_host(spec, LabeledDigraph::complete(spec.n())) == size);
    else CHECK(count_in_host(spec, LabeledGraph::complete(spec.n())) == size);
  }
}

TEST_CASE("membership rejects near misses") {
  // two disjoint triangles is not a Hamilton cycle
  LabeledGraph two_triangles(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK_FALSE(is_member(FamilySpec::hamilton(6), two_triangles));
  CHECK(is_member(FamilySpec::triangle_factor(6), two_triangles));
  LabeledGraph hexagon(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  CHECK(is_member(FamilySpec::hamilton(6), hexagon));
  CHECK_FALSE(is_member(FamilySpec::triangle_factor(6), hexagon));
  CHECK_FALSE(is_member(FamilySpec::triangle_free(6, 6), two_triangles));
  CHECK(is_member(FamilySpec::triangle_free(6, 6), hexagon));
  LabeledDigraph two_cycles(6, {{0, 1}, {1, 2}, {2, 0}, {3, 5}, {5, 4}, {4, 3}});
  CHECK(is_member(FamilySpec::directed_triangle_factor(6), two_cycles));
  CHECK_FALSE(is_member(FamilySpec::directed_hamilton(6), two_cycles));
  CHECK_THROWS_AS(is_member(FamilySpec::hamilton(5), hexagon), InputError);
  CHECK_THROWS_AS(is_member(FamilySpec::directed_hamilton(6), hexagon), InputError);
}

TEST_CASE("host counts agree with brute force on random hosts") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto host = oracle::random_graph(6, 0.7, gen);
    CHECK(count_in_host(FamilySpec::hamilton(6), host) == oracle::hamilton_cycles(host));
    CHECK(count_in_host(FamilySpec::triangle_factor(6), host) == oracle::triangle_factors(host));
    CHECK(count_in_host(FamilySpec::all_h_edge(6, 3), host) == binomial(host.edge_count(), 3));
  }
}

TEST_CASE("random subfamily is reproducible from its seed") {
  const auto a = sample_random_subfamily(5, 3, 0.5, 7);
  const auto b = sample_random_subfamily(5, 3, 0.5, 7);
  const auto c = sample_random_subfamily(5, 3, 0.5, 8);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(BigInt(a.size()) == *cardinality(FamilySpec::random_subfamily(5, 3, 0.5, 7)).exact);
  CHECK(sample_random_subfamily(5, 3, 0.0, 7).empty());
  CHECK(sample_random_subfamily(5, 3, 1.0, 7).size() == 120);
  for (const auto& g : a) CHECK(is_member(FamilySpec::random_subfamily(5, 3, 0.5, 7), g));
  CHECK_THROWS_AS(sample_random_subfamily(30, 10, 0.5, 1), CapabilityError);
}

TEST_CASE("McKay estimate for cubic graphs") {
  const auto c6 = cardinality(FamilySpec::degree_sequence(DegreeSequence::regular(6, 3)));
  CHECK(c6.exact == BigInt(70));
  CHECK(c6.method == CardinalityMethod::enumeration);
  REQUIRE(c6.log_discrepancy);
  CHECK(*c6.log_discrepancy < std::log(2.0));
  REQUIRE(c6.omitted_error_term);
  CHECK(*c6.omitted_error_term == Catch::Approx(81.0 / 9));
  // beyond the enumeration caps only the estimate remains
  const auto big = cardinality(FamilySpec::degree_sequence(DegreeSequence::regular(30, 3)));
  CHECK_FALSE(big.exact);
  CHECK(big.method == CardinalityMethod::mckay_asymptotic);
  CHECK(std::isfinite(big.log_value()));
}

TEST_CASE("family validation") {
  CHECK_THROWS_AS(FamilySpec::triangle_factor(7), DomainError);
  CHECK_THROWS_AS(FamilySpec::hamilton(2), DomainError);
  CHECK_THROWS_AS(FamilySpec::all_h_edge(4, 7), DomainError);
  CHECK_THROWS_AS(FamilySpec::all_h_edge(4, -1), DomainError);
  CHECK_THROWS_AS(FamilySpec::random_subfamily(4, 2, 1.5, 0), DomainError);
  CHECK(FamilySpec::directed_hamilton(5).universe() == 20);
  CHECK(FamilySpec::hamilton(5).universe() == 10);
  CHECK(FamilySpec::triangle_factor(9).edge_count() == 9);
  CHECK(FamilySpec::hamilton(5).vertex_transitive());
  CHECK_FALSE(FamilySpec::triangle_free(5, 3).vertex_transitive());
}
