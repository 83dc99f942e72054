#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dynanet/graphlets.hpp"
#include "dynanet/network.hpp"
#include "dynanet/series.hpp"

namespace dynanet {

struct GlobalOptions {
  // When set, nodes of degree < 2 are left out of the clustering mean.
  bool exclude_low_degree = false;
};

struct GlobalStats {
  double age = 0.0;
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  double avg_clustering = 0.0;
  // Mean distance over ordered reachable pairs u != v; 0 without edges.
  double avg_path_length = 0.0;
  // Largest finite distance in the network (max eccentricity over components).
  std::size_t max_eccentricity = 0;
  GraphletFrequencyVector graphlet_freq{};
};

GlobalStats global_stats(const Network& net, double age, const GlobalOptions& options = {},
                         unsigned threads = 1);

struct SeriesReport {
  std::vector<std::string> age_labels;
  std::vector<GlobalStats> rows;
  OverlapMatrices overlap;
};

SeriesReport series_report(const SnapshotSeries& series, const GlobalOptions& options = {},
                           unsigned threads = 1);

// Columns: age, n_nodes, n_edges, avg_clustering, avg_path_length,
// max_eccentricity, g0..g29.
void write_global_tsv(const SeriesReport& report, std::ostream& out);
// Long format: age_a, age_b, node_overlap, edge_overlap.
void write_overlap_tsv(const SeriesReport& report, std::ostream& out);

}  // namespace dynanet
