#include "dynanet/series.hpp"

#include <algorithm>
#include <fstream>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "dynanet/error.hpp"
#include "dynanet/parallel.hpp"
#include "dynanet/text.hpp"

namespace dynanet {

std::size_t ActivityMatrix::n_active(std::size_t gene) const {
  return static_cast<std::size_t>(std::count(active[gene].begin(), active[gene].end(), true));
}

ActivityMatrix universe_activity(const Network& static_net, const ExpressionMatrix& matrix,
                                 double threshold, UniverseReport* report) {
  ActivityMatrix out;
  out.ages = matrix.ages();
  out.age_labels = matrix.age_labels();
  std::size_t expression_only = 0;
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < matrix.gene_count(); ++r) {
    if (static_net.contains(matrix.genes()[r])) {
      rows.push_back(r);
    } else {
      ++expression_only;
    }
  }
  if (rows.empty()) {
    throw ValidationError(
        "no gene identifiers shared between the network and the expression matrix "
        "(check that both use the same ID scheme)");
  }
  std::sort(rows.begin(), rows.end(),
            [&](std::size_t a, std::size_t b) { return matrix.genes()[a] < matrix.genes()[b]; });
  for (const auto r : rows) {
    out.genes.push_back(matrix.genes()[r]);
    out.active.push_back(activity(matrix, matrix.genes()[r], threshold).active);
  }
  if (report) {
    report->universe_size = out.genes.size();
    report->expression_only = expression_only;
    report->network_only = static_net.node_count() - out.genes.size();
  }
  return out;
}

SnapshotSeries build_series(const Network& static_net, const ActivityMatrix& activity,
                            unsigned threads) {
  SnapshotSeries series;
  series.ages = activity.ages;
  series.age_labels = activity.age_labels;
  series.universe = activity.genes;
  series.snapshots.resize(activity.ages.size());

  std::vector<NodeIndex> index(activity.genes.size());
  for (std::size_t g = 0; g < activity.genes.size(); ++g) {
    const auto v = static_net.find(activity.genes[g]);
    if (!v) throw ValidationError("universe gene '" + activity.genes[g] + "' not in network");
    index[g] = *v;
  }
  parallel_for(activity.ages.size(), threads, [&](std::size_t age) {
    std::vector<bool> keep(static_net.node_count(), false);
    for (std::size_t g = 0; g < index.size(); ++g) {
      if (activity.active[g][age]) keep[index[g]] = true;
    }
    series.snapshots[age] = induced_subgraph(static_net, keep);
  });
  return series;
}

SnapshotSeries build_series(const Network& static_net, const ExpressionMatrix& matrix,
                            double threshold, unsigned threads, UniverseReport* report) {
  if (static_net.empty()) throw ValidationError("static network is empty");
  if (matrix.gene_count() == 0 || matrix.age_count() == 0) {
    throw ValidationError("expression matrix is empty");
  }
  return build_series(static_net, universe_activity(static_net, matrix, threshold, report), threads);
}

namespace {

template <typename Item>
std::size_t sorted_intersection_size(const std::vector<Item>& a, const std::vector<Item>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

OverlapMatrices pairwise_overlap(const SnapshotSeries& series) {
  const auto k = series.size();
  if (k < 2) throw UsageError("pairwise overlap needs at least two snapshots");
  // Node ids are sorted within each snapshot; edges are compared as id pairs.
  std::vector<std::vector<std::pair<std::string_view, std::string_view>>> edge_sets(k);
  for (std::size_t s = 0; s < k; ++s) {
    const auto& net = series.snapshots[s];
    auto& out = edge_sets[s];
    out.reserve(net.edge_count());
    for (const auto& e : net.edges()) out.emplace_back(net.id(e.first), net.id(e.second));
    std::sort(out.begin(), out.end());
  }
  OverlapMatrices result;
  result.size = k;
  result.nodes.assign(k * k, std::nullopt);
  result.edges.assign(k * k, std::nullopt);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const auto& a = series.snapshots[i];
      const auto& b = series.snapshots[j];
      const auto node_den = std::min(a.node_count(), b.node_count());
      if (node_den > 0) {
        const double v = static_cast<double>(sorted_intersection_size(a.ids(), b.ids())) /
                         static_cast<double>(node_den);
        result.nodes[i * k + j] = result.nodes[j * k + i] = v;
      }
      const auto edge_den = std::min(a.edge_count(), b.edge_count());
      if (edge_den > 0) {
        const double v = static_cast<double>(sorted_intersection_size(edge_sets[i], edge_sets[j])) /
                         static_cast<double>(edge_den);
        result.edges[i * k + j] = result.edges[j * k + i] = v;
      }
    }
  }
  return result;
}

namespace {

std::string snapshot_stem(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%02zu", i);
  return buf;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::trim(line);
    if (!t.empty() && t.front() != '#') lines.emplace_back(t);
  }
  return lines;
}

}  // namespace

void save_series(const SnapshotSeries& series, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["format"] = "dynanet-series/1";
  manifest["universe"] = "universe.txt";
  manifest["universe_size"] = series.universe.size();
  auto& snaps = manifest["snapshots"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto stem = snapshot_stem(i);
    const auto& net = series.snapshots[i];
    {
      std::ofstream out(dir / (stem + ".edges.tsv"));
      write_edge_list(net, out);
    }
    {
      std::ofstream out(dir / (stem + ".nodes.txt"));
      for (const auto& id : net.ids()) out << id << '\n';
    }
    snaps.push_back({{"index", i},
                     {"age", series.ages[i]},
                     {"label", series.age_labels[i]},
                     {"nodes", stem + ".nodes.txt"},
                     {"edges", stem + ".edges.tsv"},
                     {"n_nodes", net.node_count()},
                     {"n_edges", net.edge_count()}});
  }
  {
    std::ofstream out(dir / "universe.txt");
    for (const auto& id : series.universe) out << id << '\n';
  }
  std::ofstream out(dir / "series.json");
  out << manifest.dump(2) << '\n';
}

SnapshotSeries load_series(const std::filesystem::path& dir) {
  std::ifstream in(dir / "series.json");
  if (!in) throw ValidationError("no series.json in " + dir.string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError((dir / "series.json").string(), 0, e.what());
  }
  SnapshotSeries series;
  try {
    series.universe = read_lines(dir / manifest.at("universe").get<std::string>());
    std::sort(series.universe.begin(), series.universe.end());
    for (const auto& snap : manifest.at("snapshots")) {
      series.ages.push_back(snap.at("age").get<double>());
      series.age_labels.push_back(snap.at("label").get<std::string>());
      NetworkBuilder builder;
      for (const auto& id : read_lines(dir / snap.at("nodes").get<std::string>())) builder.add_node(id);
      std::ifstream edges(dir / snap.at("edges").get<std::string>());
      std::string line;
      while (std::getline(edges, line)) {
        if (text::is_comment_or_blank(line)) continue;
        const auto fields = text::split_fields(line);
        if (fields.size() != 2) throw ParseError(snap.at("edges").get<std::string>(), 0, "bad edge line");
        builder.add_edge(fields[0], fields[1]);
      }
      series.snapshots.push_back(builder.build());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError((dir / "series.json").string(), 0, e.what());
  }
  return series;
}

}  // namespace dynanet
