#include "dynanet/graphlet_tables.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace dynanet::graphlets {

namespace {

using E = std::pair<int, int>;

constexpr E g0[] = {{0, 1}};
constexpr E g1[] = {{0, 1}, {0, 2}};
constexpr E g2[] = {{0, 1}, {0, 2}, {1, 2}};
constexpr E g3[] = {{0, 1}, {0, 3}, {1, 2}};
constexpr E g4[] = {{0, 3}, {1, 3}, {2, 3}};
constexpr E g5[] = {{0, 1}, {0, 3}, {1, 2}, {2, 3}};
constexpr E g6[] = {{0, 3}, {1, 2}, {1, 3}, {2, 3}};
constexpr E g7[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}};
constexpr E g8[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
constexpr E g9[] = {{0, 1}, {0, 4}, {1, 2}, {2, 3}};
constexpr E g10[] = {{0, 4}, {1, 3}, {2, 3}, {3, 4}};
constexpr E g11[] = {{0, 4}, {1, 4}, {2, 4}, {3, 4}};
constexpr E g12[] = {{0, 1}, {0, 2}, {0, 4}, {1, 2}, {2, 3}};
constexpr E g13[] = {{0, 4}, {1, 2}, {1, 3}, {2, 3}, {3, 4}};
constexpr E g14[] = {{0, 4}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr E g15[] = {{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}};
constexpr E g16[] = {{0, 1}, {1, 3}, {1, 4}, {2, 3}, {2, 4}};
constexpr E g17[] = {{0, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}};
constexpr E g18[] = {{0, 1}, {0, 4}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr E g19[] = {{0, 1}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr E g20[] = {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}};
constexpr E g21[] = {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}};
constexpr E g22[] = {{0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr E g23[] = {{0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr E g24[] = {{0, 1}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}};
constexpr E g25[] = {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 4}};
constexpr E g26[] = {{0, 1}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr E g27[] = {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr E g28[] = {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
constexpr E g29[] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                     {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

const std::array<CanonicalGraphlet, kGraphletCount> kGraphlets = {{
    {2, g0, {0, 0}},
    {3, g1, {2, 1, 1}},
    {3, g2, {3, 3, 3}},
    {4, g3, {5, 5, 4, 4}},
    {4, g4, {6, 6, 6, 7}},
    {4, g5, {8, 8, 8, 8}},
    {4, g6, {9, 10, 10, 11}},
    {4, g7, {13, 12, 13, 12}},
    {4, g8, {14, 14, 14, 14}},
    {5, g9, {16, 17, 16, 15, 15}},
    {5, g10, {18, 19, 19, 21, 20}},
    {5, g11, {22, 22, 22, 22, 23}},
    {5, g12, {26, 25, 26, 24, 24}},
    {5, g13, {27, 29, 29, 30, 28}},
    {5, g14, {31, 31, 32, 32, 33}},
    {5, g15, {34, 34, 34, 34, 34}},
    {5, g16, {35, 38, 36, 37, 37}},
    {5, g17, {39, 42, 41, 40, 40}},
    {5, g18, {43, 43, 43, 43, 44}},
    {5, g19, {45, 47, 46, 48, 48}},
    {5, g20, {50, 50, 49, 49, 49}},
    {5, g21, {53, 51, 51, 53, 52}},
    {5, g22, {54, 54, 54, 55, 55}},
    {5, g23, {56, 57, 57, 57, 58}},
    {5, g24, {59, 61, 59, 60, 60}},
    {5, g25, {63, 63, 64, 62, 64}},
    {5, g26, {66, 66, 65, 67, 67}},
    {5, g27, {68, 68, 68, 68, 69}},
    {5, g28, {70, 71, 70, 71, 71}},
    {5, g29, {72, 72, 72, 72, 72}},
}};

constexpr std::array<int, kOrbitCount> kOrbitDependencies = {
    1, 2, 2, 2, 3, 4, 3, 3, 4, 3, 4, 4, 4, 4, 3, 4, 6, 5, 4, 5, 6, 6, 4, 4, 4,
    5, 7, 4, 6, 6, 7, 4, 6, 6, 6, 5, 6, 7, 7, 5, 7, 6, 7, 6, 5, 5, 6, 8, 7, 6,
    6, 8, 6, 9, 5, 6, 4, 6, 6, 7, 8, 6, 6, 8, 7, 6, 7, 7, 8, 5, 6, 6, 4};

struct ShapeTables {
  std::array<std::vector<ClassifiedShape>, kMaxGraphletSize + 1> by_size;
  std::array<int, kOrbitCount> orbit_owner{};

  ShapeTables() {
    for (int k = 2; k <= kMaxGraphletSize; ++k) by_size[k].resize(std::size_t{1} << (k * (k - 1) / 2));
    for (int g = 0; g < kGraphletCount; ++g) {
      const auto& shape = kGraphlets[g];
      for (int i = 0; i < shape.size; ++i) orbit_owner[shape.orbit[i]] = g;
      std::array<int, kMaxGraphletSize> perm{};
      std::iota(perm.begin(), perm.begin() + shape.size, 0);
      // perm maps canonical position -> labelled position.
      do {
        unsigned code = 0;
        for (const auto& [a, b] : shape.edges) {
          const int x = std::min(perm[a], perm[b]);
          const int y = std::max(perm[a], perm[b]);
          code |= 1u << pair_bit(x, y);
        }
        auto& entry = by_size[shape.size][code];
        entry.graphlet = static_cast<std::int8_t>(g);
        for (int i = 0; i < shape.size; ++i) {
          entry.orbit[perm[i]] = static_cast<std::uint8_t>(shape.orbit[i]);
        }
      } while (std::next_permutation(perm.begin(), perm.begin() + shape.size));
    }
  }
};

const ShapeTables& tables() {
  static const ShapeTables instance;
  return instance;
}

}  // namespace

const std::array<CanonicalGraphlet, kGraphletCount>& canonical_graphlets() { return kGraphlets; }

int graphlet_of_orbit(int orbit) {
  if (orbit < 0 || orbit >= kOrbitCount) throw std::out_of_range("orbit index");
  return tables().orbit_owner[orbit];
}

const std::array<int, kOrbitCount>& orbit_dependency_counts() { return kOrbitDependencies; }

std::span<const ClassifiedShape> shape_table(int size) {
  if (size < 2 || size > kMaxGraphletSize) throw std::out_of_range("graphlet size");
  return tables().by_size[size];
}

}  // namespace dynanet::graphlets
