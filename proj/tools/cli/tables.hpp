#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dynanet/aging.hpp"
#include "dynanet/centrality.hpp"
#include "dynanet/series.hpp"

namespace dynanet::cli {

// Wide table for one kind: gene, then one column per age label. Trajectories
// of other kinds are skipped.
void write_centrality_table(const SnapshotSeries& series, CentralityKind kind,
                            std::span<const Trajectory> trajectories, std::ostream& out);

// Reads <dir>/<KIND>.tsv back into trajectories. Rows must cover the series
// universe and columns must match its age labels.
std::vector<Trajectory> read_centrality_table(const std::filesystem::path& path, CentralityKind kind,
                                              const SnapshotSeries& series);

// rank, gene, score, direction, n_supporting, then <KIND>_r and <KIND>_p.
void write_predictions(const PredictionSet& set, std::ostream& out);

// The gene column of a predictions table (or any TSV with a "gene" header).
std::vector<NodeId> read_prediction_genes(const std::filesystem::path& path);

}  // namespace dynanet::cli
