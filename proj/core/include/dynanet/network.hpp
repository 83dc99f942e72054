#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace dynanet {

using NodeId = std::string;
using NodeIndex = std::uint32_t;

// Undirected edge between node indices, stored with first < second.
struct Edge {
  NodeIndex first;
  NodeIndex second;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected simple graph. Nodes are kept in lexicographic order of
// their identifiers, so NodeIndex values are stable for a given node set and
// two networks with the same nodes and edges compare equal member-wise.
class Network {
 public:
  Network() = default;
  Network(const Network& other);
  Network& operator=(const Network& other);
  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const NodeId& id(NodeIndex v) const { return ids_[v]; }
  const std::vector<NodeId>& ids() const noexcept { return ids_; }
  std::optional<NodeIndex> find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }

  // Sorted neighbor indices.
  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeIndex u, NodeIndex v) const;

  // Sorted (first < second) edge list.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  // Order-independent digest of nodes and edges; equal networks share it.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const Network& a, const Network& b) {
    return a.ids_ == b.ids_ && a.edges_ == b.edges_;
  }

 private:
  friend class NetworkBuilder;

  std::vector<NodeId> ids_;
  std::unordered_map<std::string_view, NodeIndex> index_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> adjacency_;
  std::vector<Edge> edges_;
  std::uint64_t fingerprint_ = 0;

  void finalize();
};

struct BuildReport {
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

// Accumulates identifiers and edges, then freezes them into a Network.
// Identifiers are trimmed; self-loops and repeated undirected pairs are
// dropped and counted.
class NetworkBuilder {
 public:
  void add_node(std::string_view id);
  void add_edge(std::string_view a, std::string_view b);

  Network build();
  const BuildReport& report() const noexcept { return report_; }

 private:
  std::unordered_map<std::string, std::size_t> lookup_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  BuildReport report_;

  std::size_t intern(std::string_view id);
};

Network make_network(std::span<const std::pair<std::string, std::string>> edges,
                     std::span<const std::string> isolated = {});

struct EdgeListLoad {
  Network network;
  BuildReport report;
};

// Two-column whitespace/tab delimited edge list; '#' lines are comments.
// With dedup=false a repeated undirected pair is a parse error.
EdgeListLoad load_edge_list(const std::filesystem::path& path, bool dedup = true);
EdgeListLoad parse_edge_list(std::string_view content, bool dedup = true,
                             const std::string& source = "<memory>");

void write_edge_list(const Network& net, std::ostream& out);

Network induced_subgraph(const Network& net, const std::unordered_set<NodeId>& keep);
// keep_mask is indexed by NodeIndex of net.
Network induced_subgraph(const Network& net, const std::vector<bool>& keep_mask);

struct ShortestPathSummary {
  NodeId source;
  std::unordered_map<NodeId, std::uint32_t> dist;
  // Shortest-path counts; exact while below 2^53.
  std::unordered_map<NodeId, double> sigma;
};

ShortestPathSummary bfs_paths(const Network& net, std::string_view source);

// Index-based BFS used by the centrality and global modules. Unreachable
// nodes have dist == kUnreachable and sigma == 0. order receives nodes in
// non-decreasing distance.
inline constexpr std::uint32_t kUnreachable = 0xffffffffu;

struct BfsWorkspace {
  std::vector<std::uint32_t> dist;
  std::vector<double> sigma;
  std::vector<NodeIndex> order;
};

void bfs_from(const Network& net, NodeIndex source, BfsWorkspace& ws);

}  // namespace dynanet
