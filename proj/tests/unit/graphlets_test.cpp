#include <gtest/gtest.h>

#include <numeric>

#include "dynanet/error.hpp"
#include "dynanet/graphlets.hpp"
#include "oracles.hpp"

using namespace dynanet;

namespace {

Network complete(std::size_t n) {
  std::vector<std::pair<std::string, std::string>> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back("k" + std::to_string(i), "k" + std::to_string(j));
  }
  return make_network(e);
}

}  // namespace

TEST(Graphlets, TriangleCounts) {
  const auto counts = count_orbits(complete(3));
  for (NodeIndex v = 0; v < 3; ++v) {
    EXPECT_EQ(counts[v][0], 2u);
    EXPECT_EQ(counts[v][3], 1u);
    EXPECT_EQ(counts[v][1] + counts[v][2], 0u);
  }
  EXPECT_EQ(counts.frequencies[2], 1u);
}

TEST(Graphlets, K5Counts) {
  const auto counts = count_orbits(complete(5));
  for (NodeIndex v = 0; v < 5; ++v) {
    EXPECT_EQ(counts[v][0], 4u);
    EXPECT_EQ(counts[v][3], 6u);
    EXPECT_EQ(counts[v][14], 4u);
    EXPECT_EQ(counts[v][72], 1u);
  }
  EXPECT_EQ(counts.frequencies[29], 1u);
  EXPECT_EQ(counts.frequencies[8], 5u);
}

TEST(Graphlets, IsolatedNodeHasZeroVector) {
  const std::vector<std::pair<std::string, std::string>> e{{"a", "b"}};
  const std::vector<std::string> iso{"z"};
  const auto net = make_network(e, iso);
  const auto counts = count_orbits(net);
  const auto z = *net.find("z");
  EXPECT_EQ(std::accumulate(counts[z].begin(), counts[z].end(), std::uint64_t{0}), 0u);
}

TEST(Graphlets, OrbitZeroIsDegree) {
  const auto net = oracle::random_graph(40, 0.15, 3);
  const auto counts = count_orbits(net);
  for (NodeIndex v = 0; v < net.node_count(); ++v) EXPECT_EQ(counts[v][0], net.degree(v));
}

TEST(Graphlets, MatchesBruteForce) {
  for (std::uint32_t seed = 1; seed <= 10; ++seed) {
    const auto net = oracle::random_graph(14 + seed, 0.08 + 0.04 * seed, seed);
    const auto counts = count_orbits(net);
    const auto oracle_counts = oracle::brute_force_orbits(net);
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
      for (int o = 0; o < graphlets::kOrbitCount; ++o) {
        ASSERT_EQ(counts[v][o], oracle_counts.orbits[v][o]) << "seed " << seed << " node " << v << " orbit " << o;
      }
    }
    for (int g = 0; g < graphlets::kGraphletCount; ++g) EXPECT_EQ(counts.frequencies[g], oracle_counts.graphlets[g]);
  }
}

TEST(Graphlets, ThreadCountDoesNotChangeCounts) {
  const auto net = oracle::random_graph(60, 0.1, 17);
  const auto one = count_orbits(net, 1);
  const auto four = count_orbits(net, 4);
  EXPECT_EQ(one.nodes, four.nodes);
  EXPECT_EQ(one.frequencies, four.frequencies);
}

TEST(Graphlets, GraphletSumEqualsOrbitSumOverPositions) {
  const auto net = oracle::random_graph(30, 0.2, 8);
  const auto counts = count_orbits(net);
  std::uint64_t positions = 0;
  for (const auto& v : counts.nodes) positions += std::accumulate(v.begin(), v.end(), std::uint64_t{0});
  std::uint64_t expected = 0;
  const auto& table = graphlets::canonical_graphlets();
  for (int g = 0; g < graphlets::kGraphletCount; ++g) expected += counts.frequencies[g] * table[g].size;
  EXPECT_EQ(positions, expected);
}

TEST(Graphlets, OrbitDependencyTableChecksum) {
  const auto& deps = graphlets::orbit_dependency_counts();
  ASSERT_EQ(deps.size(), 73u);
  std::uint64_t sum = 0, weighted = 0;
  for (std::size_t i = 0; i < deps.size(); ++i) {
    sum += deps[i];
    weighted += (i + 1) * deps[i];
  }
  EXPECT_EQ(sum, 391u);
  EXPECT_EQ(weighted, 16228u);
  EXPECT_EQ(deps[0], 1);
  EXPECT_EQ(deps[72], 4);
}

TEST(Graphlets, AgreementIdentity) {
  const auto net = oracle::random_graph(30, 0.2, 4);
  EXPECT_NEAR(gdd_agreement(net, net), 1.0, 1e-12);
  EXPECT_NEAR(gdd_agreement(net, net, MeanMode::kGeometric), 1.0, 1e-12);
}

TEST(Graphlets, AgreementInUnitIntervalAndSymmetric) {
  for (std::uint32_t s = 0; s < 5; ++s) {
    const auto a = oracle::random_graph(25, 0.1, 100 + s);
    const auto b = oracle::random_graph(25, 0.3, 200 + s);
    const auto ab = gdd_agreement(a, b);
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_NEAR(ab, gdd_agreement(b, a), 1e-12);
  }
}

TEST(Graphlets, IsomorphicNetworksAgreeFully) {
  const auto a = parse_edge_list("a b\nb c\nc d\nd a\na c\nd e\n").network;
  const auto b = parse_edge_list("q w\nw e\ne r\nr q\nq e\nr t\n").network;
  EXPECT_NEAR(gdd_agreement(a, b), 1.0, 1e-12);
}

TEST(Graphlets, OrbitMissingFromOneSideScoresZero) {
  // A triangle has orbit 3, a path has none; orbit 0 differs too.
  const auto tri = parse_edge_list("a b\nb c\nc a\n").network;
  const auto path = parse_edge_list("a b\nb c\n").network;
  const auto per = orbit_agreements(degree_distribution(count_orbits(tri)), degree_distribution(count_orbits(path)));
  EXPECT_NEAR(per[3], 1.0 - 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(per[10], 1.0);
}

TEST(Graphlets, EmptyNetworkIsUsageError) {
  const auto a = parse_edge_list("a b\n").network;
  EXPECT_THROW(gdd_agreement(a, Network{}), UsageError);
}
