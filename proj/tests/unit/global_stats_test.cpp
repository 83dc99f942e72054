#include <gtest/gtest.h>

#include <sstream>

#include "dynanet/global_stats.hpp"
#include "oracles.hpp"

using namespace dynanet;

TEST(GlobalStats, Triangle) {
  const auto s = global_stats(parse_edge_list("a b\nb c\nc a\n").network, 30);
  EXPECT_EQ(s.avg_clustering, 1.0);
  EXPECT_EQ(s.avg_path_length, 1.0);
  EXPECT_EQ(s.n_nodes, 3u);
  EXPECT_EQ(s.graphlet_freq[2], 1u);
}

TEST(GlobalStats, Path) {
  const auto s = global_stats(parse_edge_list("a b\nb c\n").network, 30);
  EXPECT_EQ(s.avg_clustering, 0.0);
  EXPECT_DOUBLE_EQ(s.avg_path_length, 4.0 / 3.0);
  EXPECT_EQ(s.max_eccentricity, 2u);
}

TEST(GlobalStats, TreeHasZeroClustering) {
  const auto s = global_stats(parse_edge_list("a b\nb c\nb d\nd e\ne f\n").network, 0);
  EXPECT_EQ(s.avg_clustering, 0.0);
}

TEST(GlobalStats, ExcludeLowDegreeChangesDenominator) {
  const auto net = parse_edge_list("a b\nb c\nc a\nc d\n").network;
  const auto all = global_stats(net, 0).avg_clustering;
  const auto high = global_stats(net, 0, {true}).avg_clustering;
  EXPECT_DOUBLE_EQ(all, (1.0 + 1.0 + 1.0 / 3.0) / 4.0);
  EXPECT_DOUBLE_EQ(high, (1.0 + 1.0 + 1.0 / 3.0) / 3.0);
}

TEST(GlobalStats, MatchesAllPairsOracle) {
  for (std::uint32_t seed = 0; seed < 5; ++seed) {
    const auto net = oracle::random_graph(40, 0.06, seed);
    const auto s = global_stats(net, 0);
    const auto d = oracle::all_pairs_distances(net);
    double sum = 0.0, pairs = 0.0;
    for (const auto& row : d) {
      for (const auto x : row) {
        if (x > 0) {
          sum += x;
          pairs += 1;
        }
      }
    }
    EXPECT_NEAR(s.avg_path_length, sum / pairs, 1e-12);
    const auto cc = oracle::clustering(net);
    double mean = 0.0;
    for (const auto c : cc) mean += c;
    EXPECT_NEAR(s.avg_clustering, mean / static_cast<double>(cc.size()), 1e-12);
    EXPECT_GE(s.avg_path_length, 1.0);
  }
}

TEST(GlobalStats, SeriesReportHasOneRowPerAge) {
  const auto net = oracle::random_graph(20, 0.2, 3);
  SnapshotSeries series;
  series.ages = {20, 30, 40};
  series.age_labels = {"20", "30", "40"};
  series.snapshots = {net, net, net};
  series.universe = net.ids();
  const auto report = series_report(series, {}, 2);
  ASSERT_EQ(report.rows.size(), 3u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.avg_clustering, report.rows[0].avg_clustering);
    EXPECT_EQ(row.graphlet_freq, report.rows[0].graphlet_freq);
  }
  std::ostringstream out;
  write_global_tsv(report, out);
  const auto text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.rfind("age\tn_nodes\tn_edges\tavg_clustering\tavg_path_length\tmax_eccentricity\tg0", 0), 0u);
}

TEST(GlobalStats, PermutingSnapshotsPermutesRows) {
  const auto a = oracle::random_graph(20, 0.2, 1);
  const auto b = oracle::random_graph(20, 0.1, 2);
  SnapshotSeries s1{{1, 2}, {"1", "2"}, {a, b}, a.ids()};
  SnapshotSeries s2{{1, 2}, {"1", "2"}, {b, a}, a.ids()};
  const auto r1 = series_report(s1);
  const auto r2 = series_report(s2);
  EXPECT_EQ(r1.rows[0].avg_clustering, r2.rows[1].avg_clustering);
  EXPECT_EQ(r1.rows[1].avg_path_length, r2.rows[0].avg_path_length);
  EXPECT_EQ(r1.rows[0].graphlet_freq, r2.rows[1].graphlet_freq);
}
