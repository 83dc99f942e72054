#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dynanet/expression.hpp"
#include "dynanet/network.hpp"

namespace dynanet {

// Activity of the universe genes (static network ∩ expression matrix) at
// every age. Row order follows `genes`, which is sorted.
struct ActivityMatrix {
  std::vector<NodeId> genes;
  std::vector<double> ages;
  std::vector<std::string> age_labels;
  std::vector<std::vector<bool>> active;  // [gene][age]

  std::size_t n_active(std::size_t gene) const;
};

struct UniverseReport {
  std::size_t universe_size = 0;
  std::size_t network_only = 0;     // in the static network, no expression row
  std::size_t expression_only = 0;  // expression row, absent from the network
};

// Throws ValidationError when the two gene-ID sets do not intersect.
ActivityMatrix universe_activity(const Network& static_net, const ExpressionMatrix& matrix,
                                 double threshold = kDefaultDetectionThreshold,
                                 UniverseReport* report = nullptr);

struct SnapshotSeries {
  std::vector<double> ages;
  std::vector<std::string> age_labels;
  std::vector<Network> snapshots;  // index-aligned with ages
  std::vector<NodeId> universe;    // sorted

  std::size_t size() const noexcept { return snapshots.size(); }
};

SnapshotSeries build_series(const Network& static_net, const ActivityMatrix& activity,
                            unsigned threads = 1);
SnapshotSeries build_series(const Network& static_net, const ExpressionMatrix& matrix,
                            double threshold = kDefaultDetectionThreshold, unsigned threads = 1,
                            UniverseReport* report = nullptr);

// Overlap between snapshots i and j: |Vi ∩ Vj| / min(|Vi|, |Vj|), likewise for
// edges. nullopt when the denominator is zero.
struct OverlapMatrices {
  std::size_t size = 0;
  std::vector<std::optional<double>> nodes;
  std::vector<std::optional<double>> edges;

  std::optional<double> node(std::size_t i, std::size_t j) const { return nodes[i * size + j]; }
  std::optional<double> edge(std::size_t i, std::size_t j) const { return edges[i * size + j]; }
};

OverlapMatrices pairwise_overlap(const SnapshotSeries& series);

// Directory layout: series.json manifest, universe.txt, and per age a
// snapshot_NN.edges.tsv edge list plus snapshot_NN.nodes.txt node list
// (the node list keeps active genes that have no edges at that age).
void save_series(const SnapshotSeries& series, const std::filesystem::path& dir);
SnapshotSeries load_series(const std::filesystem::path& dir);

}  // namespace dynanet
