#include "dynanet/centrality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "dynanet/error.hpp"
#include "dynanet/parallel.hpp"

namespace dynanet {

std::string_view to_string(CentralityKind kind) {
  switch (kind) {
    case CentralityKind::kDegc: return "DEGC";
    case CentralityKind::kClusc: return "CLUSC";
    case CentralityKind::kKc: return "KC";
    case CentralityKind::kGdc: return "GDC";
    case CentralityKind::kBetwc: return "BETWC";
    case CentralityKind::kClosec: return "CLOSEC";
    case CentralityKind::kEcc: return "ECC";
  }
  return "?";
}

std::optional<CentralityKind> parse_centrality(std::string_view name) {
  std::string upper(name);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto kind : kAllCentralities) {
    if (to_string(kind) == upper) return kind;
  }
  return std::nullopt;
}

CentralityMap degc(const Network& net) {
  CentralityMap out{CentralityKind::kDegc, std::vector<double>(net.node_count())};
  for (NodeIndex v = 0; v < net.node_count(); ++v) out.values[v] = static_cast<double>(net.degree(v));
  return out;
}

CentralityMap clusc(const Network& net) {
  CentralityMap out{CentralityKind::kClusc, std::vector<double>(net.node_count(), 0.0)};
  std::vector<char> mark(net.node_count(), 0);
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    const auto nbrs = net.neighbors(v);
    const auto d = nbrs.size();
    if (d < 2) continue;
    for (const auto u : nbrs) mark[u] = 1;
    std::size_t links = 0;
    for (const auto u : nbrs) {
      for (const auto w : net.neighbors(u)) {
        if (w > u && mark[w]) ++links;
      }
    }
    for (const auto u : nbrs) mark[u] = 0;
    out.values[v] = static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
  }
  return out;
}

CentralityMap kcoreness(const Network& net) {
  // Batagelj-Zaversnik bucket peeling.
  const auto n = net.node_count();
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    deg[v] = net.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (const auto d : deg) ++bin[d];
  std::size_t start = 0;
  for (auto& b : bin) {
    const auto count = b;
    b = start;
    start += count;
  }
  std::vector<NodeIndex> vert(n);
  std::vector<std::size_t> pos(n);
  for (NodeIndex v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = vert[i];
    for (const auto u : net.neighbors(v)) {
      if (deg[u] > deg[v]) {
        const auto du = deg[u];
        const auto pu = pos[u];
        const auto pw = bin[du];
        const auto w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  CentralityMap out{CentralityKind::kKc, std::vector<double>(n)};
  for (NodeIndex v = 0; v < n; ++v) out.values[v] = static_cast<double>(deg[v]);
  return out;
}

CentralityMap gdc(const Network& net, const OrbitCounts& orbits) {
  if (orbits.fingerprint != net.fingerprint() || orbits.nodes.size() != net.node_count()) {
    throw UsageError("orbit counts were computed on a different network");
  }
  const auto& deps = graphlets::orbit_dependency_counts();
  std::array<double, graphlets::kOrbitCount> weight{};
  for (int i = 0; i < graphlets::kOrbitCount; ++i) {
    weight[i] = 1.0 - std::log(static_cast<double>(deps[i])) / std::log(73.0);
  }
  CentralityMap out{CentralityKind::kGdc, std::vector<double>(net.node_count(), 0.0)};
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    double sum = 0.0;
    for (int i = 0; i < graphlets::kOrbitCount; ++i) {
      sum += weight[i] * std::log(static_cast<double>(orbits[v][i]) + 1.0);
    }
    out.values[v] = sum;
  }
  return out;
}

namespace {

struct PathMeasures {
  std::vector<double> betweenness;
  std::vector<double> closeness;
  std::vector<double> eccentricity;
};

// One BFS per source. Brandes' dependency accumulation gives ordered-pair
// betweenness, halved for unordered pairs. Sources are processed in blocks
// whose partial sums are added in block order, so the result does not depend
// on scheduling.
PathMeasures shortest_path_measures(const Network& net, bool want_betweenness, unsigned threads) {
  const auto n = net.node_count();
  PathMeasures out;
  out.closeness.assign(n, 0.0);
  out.eccentricity.assign(n, 0.0);
  out.betweenness.assign(n, 0.0);

  constexpr std::size_t kBlock = 32;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> partial(want_betweenness ? blocks : 0);

  parallel_for(blocks, threads, [&](std::size_t b) {
    BfsWorkspace ws;
    std::vector<double> delta(n, 0.0);
    std::vector<double> acc;
    if (want_betweenness) acc.assign(n, 0.0);
    const auto end = std::min(n, (b + 1) * kBlock);
    for (auto s = b * kBlock; s < end; ++s) {
      const auto source = static_cast<NodeIndex>(s);
      bfs_from(net, source, ws);
      std::uint64_t total = 0;
      std::uint32_t farthest = 0;
      for (const auto v : ws.order) {
        total += ws.dist[v];
        farthest = std::max(farthest, ws.dist[v]);
      }
      out.closeness[s] = total > 0 ? 1.0 / static_cast<double>(total) : 0.0;
      out.eccentricity[s] = farthest > 0 ? 1.0 / static_cast<double>(farthest) : 0.0;
      if (!want_betweenness) continue;
      for (const auto v : ws.order) delta[v] = 0.0;
      for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
        const auto w = *it;
        for (const auto v : net.neighbors(w)) {
          if (ws.dist[v] != kUnreachable && ws.dist[v] + 1 == ws.dist[w]) {
            delta[v] += ws.sigma[v] / ws.sigma[w] * (1.0 + delta[w]);
          }
        }
        if (w != source) acc[w] += delta[w];
      }
    }
    if (want_betweenness) partial[b] = std::move(acc);
  });
  if (want_betweenness) {
    for (const auto& block : partial) {
      for (std::size_t v = 0; v < n; ++v) out.betweenness[v] += block[v];
    }
    for (auto& v : out.betweenness) v /= 2.0;
  }
  return out;
}

}  // namespace

CentralityMap betwc(const Network& net, unsigned threads) {
  return {CentralityKind::kBetwc, shortest_path_measures(net, true, threads).betweenness};
}

CentralityMap closec(const Network& net, unsigned threads) {
  return {CentralityKind::kClosec, shortest_path_measures(net, false, threads).closeness};
}

CentralityMap ecc(const Network& net, unsigned threads) {
  return {CentralityKind::kEcc, shortest_path_measures(net, false, threads).eccentricity};
}

std::vector<CentralityMap> compute_centralities(const Network& net,
                                                std::span<const CentralityKind> kinds,
                                                unsigned threads) {
  const auto wants = [&](CentralityKind k) { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); };
  std::optional<PathMeasures> paths;
  if (wants(CentralityKind::kBetwc) || wants(CentralityKind::kClosec) || wants(CentralityKind::kEcc)) {
    paths = shortest_path_measures(net, wants(CentralityKind::kBetwc), threads);
  }
  std::optional<OrbitCounts> orbits;
  if (wants(CentralityKind::kGdc)) orbits = count_orbits(net, threads);

  std::vector<CentralityMap> out;
  out.reserve(kinds.size());
  for (const auto kind : kinds) {
    switch (kind) {
      case CentralityKind::kDegc: out.push_back(degc(net)); break;
      case CentralityKind::kClusc: out.push_back(clusc(net)); break;
      case CentralityKind::kKc: out.push_back(kcoreness(net)); break;
      case CentralityKind::kGdc: out.push_back(gdc(net, *orbits)); break;
      case CentralityKind::kBetwc: out.push_back({kind, paths->betweenness}); break;
      case CentralityKind::kClosec: out.push_back({kind, paths->closeness}); break;
      case CentralityKind::kEcc: out.push_back({kind, paths->eccentricity}); break;
    }
  }
  return out;
}

}  // namespace dynanet
