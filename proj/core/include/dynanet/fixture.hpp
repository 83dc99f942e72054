#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "dynanet/network.hpp"

namespace dynanet {

// Synthetic end-to-end data set: a static network, a detection p-value matrix
// and a list of genes whose degree erodes with age by construction.
//
// Layout (200 nodes, 10 ages by default):
//   planted    always active, each the hub of a private 3-leaf star; leaf k
//              is active at ages [0, 2 - k], so the hub's degree runs 3,2,1,0...
//   leaves     the star partners (active at 3 or fewer ages)
//   decoys     pairs active only at the last 1-3 ages, mirroring the leaves
//   background a random component whose genes are active at each age with
//              a fixed probability
struct FixtureOptions {
  std::uint64_t seed = 20240611;
  std::size_t planted = 20;
  std::size_t decoy_pairs = 30;
  std::size_t background = 60;
  std::size_t background_edges = 120;
  // Probability that a background gene is active at a given age.
  double background_activity = 0.4;
  std::size_t expression_only = 10;  // extra rows absent from the network
  std::vector<double> ages{20, 28, 36, 44, 52, 60, 68, 76, 84, 92};
};

struct FixtureData {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> genes;               // expression rows, in file order
  std::vector<std::vector<double>> pvals;  // [row][age]
  std::vector<double> ages;
  std::vector<NodeId> planted;             // sorted
};

FixtureData make_fixture(const FixtureOptions& options = {});

// Same data with the expression rows' gene labels permuted among the network
// genes, which destroys the planted signal.
FixtureData shuffle_fixture(const FixtureData& data, std::uint64_t seed);

// Inputs for the validation step: reference gene sets and two annotation
// tables. Reference "REF_A" and a handful of terms in each table lean towards
// the planted genes; everything else is drawn uniformly.
struct ValidationFixture {
  std::vector<std::pair<std::string, std::vector<NodeId>>> reference_sets;  // name, sorted members
  // gene, term, evidence code ("" for two-column rows)
  std::vector<std::tuple<NodeId, std::string, std::string>> go;
  std::vector<std::pair<NodeId, std::string>> disease;
};

ValidationFixture make_validation_fixture(const FixtureData& data, std::uint64_t seed = 99);

// Writes ref_<name>.txt, go.tsv and do.tsv into dir.
void write_validation_fixture(const ValidationFixture& data, const std::filesystem::path& dir);

// Writes network.tsv, expression.tsv and planted.txt into dir.
void write_fixture(const FixtureData& data, const std::filesystem::path& dir,
                   const std::string& expression_name = "expression.tsv");

}  // namespace dynanet
