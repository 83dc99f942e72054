#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "dynanet/graphlet_tables.hpp"
#include "dynanet/network.hpp"

namespace dynanet {

using OrbitDegreeVector = std::array<std::uint64_t, graphlets::kOrbitCount>;
using GraphletFrequencyVector = std::array<std::uint64_t, graphlets::kGraphletCount>;

// Per-node orbit degree vectors of one network, indexed by NodeIndex.
// `fingerprint` records which network the counts belong to.
struct OrbitCounts {
  std::uint64_t fingerprint = 0;
  std::vector<OrbitDegreeVector> nodes;
  GraphletFrequencyVector frequencies{};

  const OrbitDegreeVector& operator[](NodeIndex v) const { return nodes[v]; }
};

// Exact induced counts of the 73 orbits / 30 graphlets on 2-5 nodes. Every
// connected induced subgraph is enumerated once (ESU); work is split over
// root nodes.
OrbitCounts count_orbits(const Network& net, unsigned threads = 1);

GraphletFrequencyVector graphlet_frequencies(const Network& net, unsigned threads = 1);

// d[j][k]: number of nodes touching orbit j exactly k times, k >= 1.
struct GraphletDegreeDistribution {
  std::array<std::map<std::uint64_t, std::uint64_t>, graphlets::kOrbitCount> orbits;
};

GraphletDegreeDistribution degree_distribution(const OrbitCounts& counts);

enum class MeanMode { kArithmetic, kGeometric };

// Per-orbit agreements A^j in [0,1]; see gdd_agreement.
std::array<double, graphlets::kOrbitCount> orbit_agreements(const GraphletDegreeDistribution& a,
                                                           const GraphletDegreeDistribution& b);

// Scale d^j(k) by 1/k, normalise to unit mass, take the Euclidean distance
// divided by sqrt(2) and report 1 - distance, averaged over the 73 orbits.
// An orbit absent from both networks agrees perfectly; absent from one only,
// its normalised vector is taken as zero.
double gdd_agreement(const GraphletDegreeDistribution& a, const GraphletDegreeDistribution& b,
                     MeanMode mode = MeanMode::kArithmetic);
double gdd_agreement(const Network& a, const Network& b, MeanMode mode = MeanMode::kArithmetic,
                     unsigned threads = 1);

}  // namespace dynanet
