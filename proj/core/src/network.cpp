#include "dynanet/network.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "dynanet/error.hpp"
#include "dynanet/rng.hpp"
#include "dynanet/text.hpp"

namespace dynanet {

Network::Network(const Network& other)
    : ids_(other.ids_),
      offsets_(other.offsets_),
      adjacency_(other.adjacency_),
      edges_(other.edges_),
      fingerprint_(other.fingerprint_) {
  index_.reserve(ids_.size());
  for (NodeIndex v = 0; v < ids_.size(); ++v) index_.emplace(ids_[v], v);
}

Network& Network::operator=(const Network& other) {
  if (this != &other) *this = Network(other);
  return *this;
}

std::optional<NodeIndex> Network::find(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Network::has_edge(NodeIndex u, NodeIndex v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

void Network::finalize() {
  index_.clear();
  index_.reserve(ids_.size());
  for (NodeIndex v = 0; v < ids_.size(); ++v) index_.emplace(ids_[v], v);

  std::vector<std::size_t> degree(ids_.size() + 1, 0);
  for (const auto& e : edges_) {
    ++degree[e.first];
    ++degree[e.second];
  }
  offsets_.assign(ids_.size() + 1, 0);
  for (std::size_t v = 0; v < ids_.size(); ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.assign(offsets_.back(), 0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.first]++] = e.second;
    adjacency_[cursor[e.second]++] = e.first;
  }
  for (std::size_t v = 0; v < ids_.size(); ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }

  std::uint64_t h = mix64(ids_.size()) ^ mix64(edges_.size() + 0x51ed27);
  for (const auto& id : ids_) h = mix64(h ^ hash_string(id));
  for (const auto& e : edges_) h = mix64(h ^ ((std::uint64_t{e.first} << 32) | e.second));
  fingerprint_ = h;
}

std::size_t NetworkBuilder::intern(std::string_view id) {
  const std::string key(text::trim(id));
  if (key.empty()) throw ValidationError("empty node identifier");
  const auto [it, inserted] = lookup_.try_emplace(key, names_.size());
  if (inserted) names_.push_back(key);
  return it->second;
}

void NetworkBuilder::add_node(std::string_view id) { intern(id); }

void NetworkBuilder::add_edge(std::string_view a, std::string_view b) {
  const auto u = intern(a);
  const auto v = intern(b);
  if (u == v) {
    ++report_.self_loops_dropped;
    return;
  }
  pairs_.emplace_back(std::min(u, v), std::max(u, v));
}

Network NetworkBuilder::build() {
  std::vector<std::size_t> order(names_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return names_[a] < names_[b]; });
  std::vector<NodeIndex> rank(names_.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<NodeIndex>(r);

  Network net;
  net.ids_.reserve(names_.size());
  for (auto i : order) net.ids_.push_back(names_[i]);
  net.edges_.reserve(pairs_.size());
  for (const auto& [a, b] : pairs_) {
    const auto u = rank[a];
    const auto v = rank[b];
    net.edges_.push_back({std::min(u, v), std::max(u, v)});
  }
  std::sort(net.edges_.begin(), net.edges_.end());
  const auto before = net.edges_.size();
  net.edges_.erase(std::unique(net.edges_.begin(), net.edges_.end()), net.edges_.end());
  report_.duplicates_dropped += before - net.edges_.size();
  net.finalize();
  return net;
}

Network make_network(std::span<const std::pair<std::string, std::string>> edges,
                     std::span<const std::string> isolated) {
  NetworkBuilder builder;
  for (const auto& id : isolated) builder.add_node(id);
  for (const auto& [a, b] : edges) builder.add_edge(a, b);
  return builder.build();
}

EdgeListLoad parse_edge_list(std::string_view content, bool dedup, const std::string& source) {
  NetworkBuilder builder;
  std::size_t line_no = 0;
  std::size_t records = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const auto nl = content.find('\n', pos);
    const auto line = content.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? content.size() + 1 : nl + 1;
    if (text::is_comment_or_blank(line)) continue;
    const auto fields = text::split_fields(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError(source, line_no,
                       "expected 2 columns, found " + std::to_string(fields.size()));
    }
    builder.add_edge(fields[0], fields[1]);
    ++records;
  }
  if (records == 0) throw ParseError(source, 0, "edge list is empty");
  EdgeListLoad result{builder.build(), builder.report()};
  if (!dedup && result.report.duplicates_dropped > 0) {
    throw ParseError(source, 0,
                     std::to_string(result.report.duplicates_dropped) + " duplicate edge(s)");
  }
  return result;
}

EdgeListLoad load_edge_list(const std::filesystem::path& path, bool dedup) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open edge list " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_edge_list(buffer.str(), dedup, path.string());
}

void write_edge_list(const Network& net, std::ostream& out) {
  for (const auto& e : net.edges()) out << net.id(e.first) << '\t' << net.id(e.second) << '\n';
}

Network induced_subgraph(const Network& net, const std::vector<bool>& keep_mask) {
  NetworkBuilder builder;
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    if (keep_mask[v]) builder.add_node(net.id(v));
  }
  for (const auto& e : net.edges()) {
    if (keep_mask[e.first] && keep_mask[e.second]) builder.add_edge(net.id(e.first), net.id(e.second));
  }
  return builder.build();
}

Network induced_subgraph(const Network& net, const std::unordered_set<NodeId>& keep) {
  std::vector<bool> mask(net.node_count(), false);
  for (const auto& id : keep) {
    if (const auto v = net.find(id)) mask[*v] = true;
  }
  return induced_subgraph(net, mask);
}

void bfs_from(const Network& net, NodeIndex source, BfsWorkspace& ws) {
  const auto n = net.node_count();
  ws.dist.assign(n, kUnreachable);
  ws.sigma.assign(n, 0.0);
  ws.order.clear();
  ws.dist[source] = 0;
  ws.sigma[source] = 1.0;
  ws.order.push_back(source);
  for (std::size_t head = 0; head < ws.order.size(); ++head) {
    const auto v = ws.order[head];
    const auto next = ws.dist[v] + 1;
    for (const auto w : net.neighbors(v)) {
      if (ws.dist[w] == kUnreachable) {
        ws.dist[w] = next;
        ws.order.push_back(w);
      }
      if (ws.dist[w] == next) ws.sigma[w] += ws.sigma[v];
    }
  }
}

ShortestPathSummary bfs_paths(const Network& net, std::string_view source) {
  const auto s = net.find(source);
  if (!s) throw UsageError("unknown source node '" + std::string(source) + "'");
  BfsWorkspace ws;
  bfs_from(net, *s, ws);
  ShortestPathSummary out;
  out.source = std::string(source);
  for (const auto v : ws.order) {
    out.dist.emplace(net.id(v), ws.dist[v]);
    out.sigma.emplace(net.id(v), ws.sigma[v]);
  }
  return out;
}

}  // namespace dynanet
