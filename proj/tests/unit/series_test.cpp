#include <gtest/gtest.h>

#include <filesystem>

#include "dynanet/error.hpp"
#include "dynanet/series.hpp"
#include "oracles.hpp"

using namespace dynanet;

namespace {

ExpressionMatrix matrix_for(const Network& net, std::size_t ages, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 0.1);
  std::vector<double> age_values;
  for (std::size_t a = 0; a < ages; ++a) age_values.push_back(20.0 + 5.0 * static_cast<double>(a));
  std::vector<std::optional<double>> p;
  for (std::size_t g = 0; g < net.node_count(); ++g) {
    for (std::size_t a = 0; a < ages; ++a) p.push_back(u(gen));
  }
  return ExpressionMatrix(net.ids(), age_values, p);
}

}  // namespace

TEST(Series, SnapshotsAreInducedSubgraphs) {
  const auto net = oracle::random_graph(30, 0.2, 1);
  const auto m = matrix_for(net, 6, 2);
  const auto series = build_series(net, m);
  ASSERT_EQ(series.size(), 6u);
  for (std::size_t a = 0; a < series.size(); ++a) {
    std::unordered_set<NodeId> keep;
    for (std::size_t g = 0; g < m.gene_count(); ++g) {
      if (*m.pvalue(g, a) < kDefaultDetectionThreshold) keep.insert(m.genes()[g]);
    }
    EXPECT_EQ(series.snapshots[a], induced_subgraph(net, keep));
  }
}

TEST(Series, AlwaysActiveGivesStaticNetwork) {
  const auto net = oracle::random_graph(15, 0.3, 4);
  std::vector<std::optional<double>> p(net.node_count() * 3, 0.0);
  const auto series = build_series(net, ExpressionMatrix(net.ids(), {1, 2, 3}, p));
  for (const auto& s : series.snapshots) EXPECT_EQ(s, net);
}

TEST(Series, NeverActiveGivesEmptySnapshots) {
  const auto net = oracle::random_graph(15, 0.3, 4);
  std::vector<std::optional<double>> p(net.node_count() * 3, 0.9);
  const auto series = build_series(net, ExpressionMatrix(net.ids(), {1, 2, 3}, p));
  for (const auto& s : series.snapshots) EXPECT_TRUE(s.empty());
}

TEST(Series, UniverseIsIntersection) {
  const auto net = parse_edge_list("a b\nb c\n").network;
  const ExpressionMatrix m({"b", "c", "z"}, {1, 2, 3}, std::vector<std::optional<double>>(9, 0.01));
  UniverseReport report;
  const auto series = build_series(net, m, kDefaultDetectionThreshold, 1, &report);
  EXPECT_EQ(series.universe, (std::vector<NodeId>{"b", "c"}));
  EXPECT_EQ(report.universe_size, 2u);
  EXPECT_EQ(report.network_only, 1u);
  EXPECT_EQ(report.expression_only, 1u);
  EXPECT_EQ(series.snapshots[0].edge_count(), 1u);
}

TEST(Series, DisjointIdsRejected) {
  const auto net = parse_edge_list("a b\n").network;
  const ExpressionMatrix m({"x"}, {1, 2, 3}, std::vector<std::optional<double>>(3, 0.01));
  EXPECT_THROW(build_series(net, m), ValidationError);
}

TEST(Series, OverlapDiagonalAndSymmetry) {
  const auto net = oracle::random_graph(40, 0.15, 9);
  const auto series = build_series(net, matrix_for(net, 5, 10));
  const auto ov = pairwise_overlap(series);
  for (std::size_t i = 0; i < ov.size; ++i) {
    EXPECT_EQ(*ov.node(i, i), 1.0);
    for (std::size_t j = 0; j < ov.size; ++j) {
      EXPECT_EQ(ov.node(i, j), ov.node(j, i));
      EXPECT_EQ(ov.edge(i, j), ov.edge(j, i));
      EXPECT_GE(*ov.node(i, j), 0.0);
      EXPECT_LE(*ov.node(i, j), 1.0);
    }
  }
}

TEST(Series, NestedSnapshotsHaveFullOverlap) {
  const auto net = parse_edge_list("a b\nb c\nc d\n").network;
  const ExpressionMatrix m({"a", "b", "c", "d"}, {1, 2},
                           {0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01, 0.5});
  const auto ov = pairwise_overlap(build_series(net, m));
  EXPECT_EQ(*ov.node(0, 1), 1.0);
  EXPECT_EQ(*ov.edge(0, 1), 1.0);
}

TEST(Series, OverlapNeedsTwoSnapshots) {
  const auto net = parse_edge_list("a b\n").network;
  const ExpressionMatrix m({"a", "b"}, {1}, {0.01, 0.01});
  EXPECT_THROW(pairwise_overlap(build_series(net, m)), UsageError);
}

TEST(Series, SaveLoadRoundTrip) {
  const auto net = oracle::random_graph(25, 0.2, 12);
  const auto series = build_series(net, matrix_for(net, 4, 13));
  const auto dir = std::filesystem::temp_directory_path() / "dynanet_series_test";
  std::filesystem::remove_all(dir);
  save_series(series, dir);
  const auto back = load_series(dir);
  EXPECT_EQ(back.ages, series.ages);
  EXPECT_EQ(back.age_labels, series.age_labels);
  EXPECT_EQ(back.universe, series.universe);
  ASSERT_EQ(back.size(), series.size());
  for (std::size_t a = 0; a < series.size(); ++a) EXPECT_EQ(back.snapshots[a], series.snapshots[a]);
  std::filesystem::remove_all(dir);
}
