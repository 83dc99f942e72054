#include <gtest/gtest.h>

#include <sstream>

#include "dynanet/error.hpp"
#include "dynanet/network.hpp"
#include "oracles.hpp"

using namespace dynanet;

namespace {

Network path_abc() {
  const std::vector<std::pair<std::string, std::string>> e{{"a", "b"}, {"b", "c"}};
  return make_network(e);
}

}  // namespace

TEST(Network, TriangleFromUnorderedInput) {
  const auto load = parse_edge_list("b\ta\nc b\na\tc\n");
  EXPECT_EQ(load.network.node_count(), 3u);
  EXPECT_EQ(load.network.edge_count(), 3u);
  EXPECT_EQ(load.network.ids(), (std::vector<NodeId>{"a", "b", "c"}));
  for (NodeIndex v = 0; v < 3; ++v) EXPECT_EQ(load.network.degree(v), 2u);
}

TEST(Network, SelfLoopsAndDuplicatesDropped) {
  const auto load = parse_edge_list("a a\na b\nb a\n# comment\n\nb c\n");
  EXPECT_EQ(load.network.edge_count(), 2u);
  EXPECT_EQ(load.report.self_loops_dropped, 1u);
  EXPECT_EQ(load.report.duplicates_dropped, 1u);
}

TEST(Network, StrictModeRejectsDuplicates) {
  EXPECT_THROW(parse_edge_list("a b\nb a\n", false), ParseError);
}

TEST(Network, MalformedLineReportsLineNumber) {
  try {
    parse_edge_list("a b\nb c d\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Network, EmptyInputIsAnError) {
  EXPECT_THROW(parse_edge_list("# nothing\n"), ParseError);
}

TEST(Network, WhitespaceAroundIdsIsTrimmed) {
  const auto load = parse_edge_list(" a \t b \n");
  EXPECT_TRUE(load.network.contains("a"));
  EXPECT_TRUE(load.network.contains("b"));
}

TEST(Network, AdjacencyIsSymmetric) {
  const auto net = oracle::random_graph(25, 0.2, 7);
  for (NodeIndex u = 0; u < net.node_count(); ++u) {
    for (const auto v : net.neighbors(u)) {
      EXPECT_TRUE(net.has_edge(v, u));
      EXPECT_NE(u, v);
    }
  }
}

TEST(Network, WriteThenParseRoundTrips) {
  const auto net = oracle::random_graph(20, 0.3, 3);
  std::ostringstream out;
  write_edge_list(net, out);
  const auto back = parse_edge_list(out.str()).network;
  // Isolated nodes are not representable in an edge list.
  EXPECT_EQ(back.edges().size(), net.edges().size());
  EXPECT_EQ(back.edge_count(), net.edge_count());
}

TEST(Network, FingerprintIgnoresInputOrder) {
  const auto a = parse_edge_list("a b\nb c\nc d\n").network;
  const auto b = parse_edge_list("d c\nb a\nc b\n").network;
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
}

TEST(Network, InducedSubgraphKeepsOnlyInternalEdges) {
  const auto net = parse_edge_list("a b\nb c\nc d\nd a\na c\n").network;
  const auto sub = induced_subgraph(net, std::unordered_set<NodeId>{"a", "b", "c"});
  EXPECT_EQ(sub.node_count(), 3u);
  EXPECT_EQ(sub.edge_count(), 3u);
  const auto empty = induced_subgraph(net, std::unordered_set<NodeId>{});
  EXPECT_TRUE(empty.empty());
}

TEST(Network, InducedSubgraphOfAllNodesIsIdentity) {
  const auto net = oracle::random_graph(30, 0.15, 11);
  std::unordered_set<NodeId> all(net.ids().begin(), net.ids().end());
  EXPECT_EQ(induced_subgraph(net, all), net);
}

TEST(Network, InducedSubgraphIsMonotone) {
  const auto net = oracle::random_graph(30, 0.2, 5);
  std::unordered_set<NodeId> small, large;
  for (std::size_t i = 0; i < net.node_count(); ++i) {
    if (i % 3 == 0) small.insert(net.id(i));
    if (i % 3 != 2) large.insert(net.id(i));
  }
  const auto s = induced_subgraph(net, small);
  const auto l = induced_subgraph(net, large);
  for (const auto& e : s.edges()) {
    const auto u = l.find(s.id(e.first));
    const auto v = l.find(s.id(e.second));
    ASSERT_TRUE(u && v);
    EXPECT_TRUE(l.has_edge(*u, *v));
  }
}

TEST(Network, BfsOnPath) {
  const auto bfs = bfs_paths(path_abc(), "a");
  EXPECT_EQ(bfs.dist.at("c"), 2u);
  EXPECT_EQ(bfs.sigma.at("c"), 1.0);
  EXPECT_THROW(bfs_paths(path_abc(), "zz"), UsageError);
}

TEST(Network, BfsCountsBothRoutesOnSquare) {
  const auto net = parse_edge_list("a b\nb c\nc d\nd a\n").network;
  const auto bfs = bfs_paths(net, "a");
  EXPECT_EQ(bfs.dist.at("c"), 2u);
  EXPECT_EQ(bfs.sigma.at("c"), 2.0);
}

TEST(Network, BfsOmitsOtherComponents) {
  const auto net = parse_edge_list("a b\nc d\n").network;
  EXPECT_FALSE(bfs_paths(net, "a").dist.contains("c"));
}

TEST(Network, DistancesAreSymmetric) {
  const auto net = oracle::random_graph(30, 0.1, 21);
  for (NodeIndex u = 0; u < net.node_count(); ++u) {
    const auto from_u = bfs_paths(net, net.id(u));
    for (const auto& [v, d] : from_u.dist) EXPECT_EQ(bfs_paths(net, v).dist.at(net.id(u)), d);
  }
}
