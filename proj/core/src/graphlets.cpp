#include "dynanet/graphlets.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "dynanet/error.hpp"
#include "dynanet/parallel.hpp"

namespace dynanet {

namespace {

using graphlets::kMaxGraphletSize;
using graphlets::kOrbitCount;

// Enumerates connected induced subgraphs of up to five nodes whose smallest
// node index is the root, following Wernicke's ESU scheme. `closed` counts,
// for every node, how many current members it equals or neighbours, which
// makes the exclusive-neighbourhood test O(1).
class Enumerator {
 public:
  Enumerator(const Network& net, std::vector<OrbitDegreeVector>& orbits,
             GraphletFrequencyVector& frequencies)
      : net_(net), orbits_(orbits), frequencies_(frequencies), closed_(net.node_count(), 0) {
    for (int k = 2; k <= kMaxGraphletSize; ++k) tables_[k] = graphlets::shape_table(k);
    for (auto& e : ext_) e.reserve(64);
  }

  void run(NodeIndex root) {
    root_ = root;
    members_[0] = root;
    enter(root);
    auto& ext = ext_[1];
    ext.clear();
    for (const auto u : net_.neighbors(root)) {
      if (u > root) ext.push_back(u);
    }
    extend(1, 0u);
    leave(root);
  }

 private:
  const Network& net_;
  std::vector<OrbitDegreeVector>& orbits_;
  GraphletFrequencyVector& frequencies_;
  std::vector<std::uint32_t> closed_;
  std::array<std::span<const graphlets::ClassifiedShape>, kMaxGraphletSize + 1> tables_{};
  std::array<NodeIndex, kMaxGraphletSize> members_{};
  std::array<std::vector<NodeIndex>, kMaxGraphletSize + 1> ext_;
  NodeIndex root_ = 0;

  void enter(NodeIndex v) {
    ++closed_[v];
    for (const auto u : net_.neighbors(v)) ++closed_[u];
  }
  void leave(NodeIndex v) {
    --closed_[v];
    for (const auto u : net_.neighbors(v)) --closed_[u];
  }

  void record(int size, unsigned code) {
    const auto& shape = tables_[size][code];
    ++frequencies_[static_cast<std::size_t>(shape.graphlet)];
    for (int i = 0; i < size; ++i) ++orbits_[members_[i]][shape.orbit[i]];
  }

  // members_[0..size) is the current subgraph with adjacency code `code`;
  // ext_[size] holds its extension candidates.
  void extend(int size, unsigned code) {
    const auto& ext = ext_[size];
    for (std::size_t idx = 0; idx < ext.size(); ++idx) {
      const auto w = ext[idx];
      unsigned next_code = code;
      for (int i = 0; i < size; ++i) {
        if (net_.has_edge(members_[i], w)) next_code |= 1u << graphlets::pair_bit(i, size);
      }
      members_[size] = w;
      record(size + 1, next_code);
      if (size + 1 == kMaxGraphletSize) continue;

      auto& next = ext_[size + 1];
      next.assign(ext.begin() + static_cast<std::ptrdiff_t>(idx) + 1, ext.end());
      for (const auto u : net_.neighbors(w)) {
        if (u > root_ && closed_[u] == 0) next.push_back(u);
      }
      enter(w);
      extend(size + 1, next_code);
      leave(w);
    }
  }
};

}  // namespace

OrbitCounts count_orbits(const Network& net, unsigned threads) {
  OrbitCounts out;
  out.fingerprint = net.fingerprint();
  out.nodes.assign(net.node_count(), OrbitDegreeVector{});
  const auto n = net.node_count();
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    Enumerator e(net, out.nodes, out.frequencies);
    for (NodeIndex v = 0; v < n; ++v) e.run(v);
    return out;
  }
  // Each worker owns a private accumulator; integer sums make the reduction
  // order irrelevant.
  std::vector<std::vector<OrbitDegreeVector>> partial(workers);
  std::vector<GraphletFrequencyVector> partial_freq(workers);
  constexpr std::size_t kChunk = 64;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  parallel_for(workers, workers, [&](std::size_t w) {
    partial[w].assign(n, OrbitDegreeVector{});
    partial_freq[w] = {};
    Enumerator e(net, partial[w], partial_freq[w]);
    for (std::size_t c = next++; c < chunks; c = next++) {
      const auto end = std::min(n, (c + 1) * kChunk);
      for (auto v = c * kChunk; v < end; ++v) e.run(static_cast<NodeIndex>(v));
    }
  });
  for (unsigned w = 0; w < workers; ++w) {
    for (std::size_t v = 0; v < n; ++v) {
      for (int o = 0; o < kOrbitCount; ++o) out.nodes[v][o] += partial[w][v][o];
    }
    for (int g = 0; g < graphlets::kGraphletCount; ++g) out.frequencies[g] += partial_freq[w][g];
  }
  return out;
}

GraphletFrequencyVector graphlet_frequencies(const Network& net, unsigned threads) {
  return count_orbits(net, threads).frequencies;
}

GraphletDegreeDistribution degree_distribution(const OrbitCounts& counts) {
  GraphletDegreeDistribution d;
  for (const auto& vec : counts.nodes) {
    for (int o = 0; o < kOrbitCount; ++o) {
      if (vec[o] > 0) ++d.orbits[o][vec[o]];
    }
  }
  return d;
}

namespace {

std::map<std::uint64_t, double> normalised(const std::map<std::uint64_t, std::uint64_t>& dist) {
  std::map<std::uint64_t, double> scaled;
  double total = 0.0;
  for (const auto& [k, count] : dist) {
    const double s = static_cast<double>(count) / static_cast<double>(k);
    scaled.emplace(k, s);
    total += s;
  }
  if (total > 0.0) {
    for (auto& [k, s] : scaled) s /= total;
  }
  return scaled;
}

}  // namespace

std::array<double, kOrbitCount> orbit_agreements(const GraphletDegreeDistribution& a,
                                                 const GraphletDegreeDistribution& b) {
  std::array<double, kOrbitCount> result{};
  for (int o = 0; o < kOrbitCount; ++o) {
    if (a.orbits[o].empty() && b.orbits[o].empty()) {
      result[o] = 1.0;
      continue;
    }
    const auto na = normalised(a.orbits[o]);
    const auto nb = normalised(b.orbits[o]);
    // Merge over the union of degrees in increasing k; (x - y)^2 is symmetric
    // in its arguments so the sum is bit-identical for (a, b) and (b, a).
    double sum = 0.0;
    auto i = na.begin();
    auto j = nb.begin();
    while (i != na.end() || j != nb.end()) {
      double diff;
      if (j == nb.end() || (i != na.end() && i->first < j->first)) {
        diff = i->second;
        ++i;
      } else if (i == na.end() || j->first < i->first) {
        diff = j->second;
        ++j;
      } else {
        diff = i->second - j->second;
        ++i;
        ++j;
      }
      sum += diff * diff;
    }
    const double distance = std::sqrt(sum) / std::sqrt(2.0);
    result[o] = std::clamp(1.0 - distance, 0.0, 1.0);
  }
  return result;
}

double gdd_agreement(const GraphletDegreeDistribution& a, const GraphletDegreeDistribution& b,
                     MeanMode mode) {
  const auto per_orbit = orbit_agreements(a, b);
  if (mode == MeanMode::kArithmetic) {
    double sum = 0.0;
    for (const auto v : per_orbit) sum += v;
    return sum / kOrbitCount;
  }
  double log_sum = 0.0;
  for (const auto v : per_orbit) {
    if (v <= 0.0) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / kOrbitCount);
}

double gdd_agreement(const Network& a, const Network& b, MeanMode mode, unsigned threads) {
  if (a.empty() || b.empty()) throw UsageError("GDD-agreement needs two non-empty networks");
  return gdd_agreement(degree_distribution(count_orbits(a, threads)),
                       degree_distribution(count_orbits(b, threads)), mode);
}

}  // namespace dynanet
