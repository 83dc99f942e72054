#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "dynanet/graphlets.hpp"
#include "dynanet/network.hpp"

namespace dynanet {

enum class CentralityKind { kDegc, kClusc, kKc, kGdc, kBetwc, kClosec, kEcc };

inline constexpr std::array<CentralityKind, 7> kAllCentralities = {
    CentralityKind::kDegc,  CentralityKind::kClusc,  CentralityKind::kKc, CentralityKind::kGdc,
    CentralityKind::kBetwc, CentralityKind::kClosec, CentralityKind::kEcc};

std::string_view to_string(CentralityKind kind);
std::optional<CentralityKind> parse_centrality(std::string_view name);  // case-insensitive

// values[v] is the centrality of node v (NodeIndex of the source network).
struct CentralityMap {
  CentralityKind kind;
  std::vector<double> values;
};

CentralityMap degc(const Network& net);
CentralityMap clusc(const Network& net);
CentralityMap kcoreness(const Network& net);
// Throws UsageError when `orbits` were counted on a different network.
CentralityMap gdc(const Network& net, const OrbitCounts& orbits);
// Each unordered pair {s, t} contributes once; only pairs in one component.
CentralityMap betwc(const Network& net, unsigned threads = 1);
// 1 / sum of distances to reachable nodes; 0 for isolated nodes.
CentralityMap closec(const Network& net, unsigned threads = 1);
// 1 / distance to the farthest reachable node; 0 for isolated nodes.
CentralityMap ecc(const Network& net, unsigned threads = 1);

// Computes the requested kinds, sharing one BFS sweep between BETWC, CLOSEC
// and ECC and one graphlet census for GDC. Result order follows `kinds`.
std::vector<CentralityMap> compute_centralities(const Network& net,
                                                std::span<const CentralityKind> kinds,
                                                unsigned threads = 1);

}  // namespace dynanet
