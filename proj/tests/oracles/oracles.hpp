// Slow, obviously-correct reference implementations used by the tests.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dynanet/network.hpp"

namespace oracle {

// Dense 0/1 adjacency with node order equal to the network's NodeIndex order.
using Matrix = std::vector<std::vector<int>>;

Matrix adjacency(const dynanet::Network& net);

// G(n, p) with node ids v00, v01, ... drawn from std::mt19937.
dynanet::Network random_graph(std::size_t n, double density, std::uint32_t seed);

struct OrbitTable {
  std::vector<std::array<std::uint64_t, 73>> orbits;
  std::array<std::uint64_t, 30> graphlets{};
};

// Visits every node subset of size 2..5, keeps the connected ones and
// classifies each by trying all vertex permutations against the canonical
// graphlet edge lists.
OrbitTable brute_force_orbits(const dynanet::Network& net);

// Floyd-Warshall distances; -1 when unreachable.
std::vector<std::vector<int>> all_pairs_distances(const dynanet::Network& net);

// Betweenness over unordered pairs by listing every shortest path explicitly.
std::vector<double> path_enumeration_betweenness(const dynanet::Network& net);
std::vector<double> closeness(const dynanet::Network& net);
std::vector<double> eccentricity(const dynanet::Network& net);

// For k = 1, 2, ... remove nodes of degree < k until none remain below k.
std::vector<double> peeling_coreness(const dynanet::Network& net);
std::vector<double> clustering(const dynanet::Network& net);

// sum_{i<o} C(a,i) C(e-a,g-i) / C(e,g) tail in exact rational arithmetic.
double exact_hypergeom_tail(unsigned e, unsigned a, unsigned g, unsigned o);

// Fraction of all n! orderings of `values` whose Pearson correlation with
// `ages` is at least as extreme as the observed one (ties within 1e-12).
double exhaustive_permutation_p(std::span<const double> values, std::span<const double> ages);

double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace oracle
