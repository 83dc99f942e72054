#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>

namespace dynanet::graphlets {

inline constexpr int kGraphletCount = 30;
inline constexpr int kOrbitCount = 73;
inline constexpr int kMaxGraphletSize = 5;

// One of the 30 connected graphs on 2-5 nodes (standard G0..G29 numbering).
// orbit[i] is the automorphism orbit (standard 0..72 numbering) of position i.
struct CanonicalGraphlet {
  int size;
  std::span<const std::pair<int, int>> edges;
  std::array<int, kMaxGraphletSize> orbit;
};

const std::array<CanonicalGraphlet, kGraphletCount>& canonical_graphlets();

// Graphlet owning each orbit.
int graphlet_of_orbit(int orbit);

// Number of orbits affecting each orbit, as published for graphlet degree
// centrality and signature similarity weights.
const std::array<int, kOrbitCount>& orbit_dependency_counts();

// Position-pair bit layout shared by the classifier: pair (i, j), i < j, maps
// to bit j*(j-1)/2 + i, so the code of the first m positions only uses the
// low m*(m-1)/2 bits.
constexpr int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }

struct ClassifiedShape {
  std::int8_t graphlet = -1;  // -1: disconnected
  std::array<std::uint8_t, kMaxGraphletSize> orbit{};
};

// Classification of every labelled graph on `size` positions, indexed by the
// pair_bit adjacency code.
std::span<const ClassifiedShape> shape_table(int size);

}  // namespace dynanet::graphlets
