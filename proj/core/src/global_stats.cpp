#include "dynanet/global_stats.hpp"

#include <algorithm>
#include <ostream>

#include "dynanet/centrality.hpp"
#include "dynanet/parallel.hpp"
#include "dynanet/text.hpp"

namespace dynanet {

GlobalStats global_stats(const Network& net, double age, const GlobalOptions& options,
                         unsigned threads) {
  GlobalStats out;
  out.age = age;
  out.n_nodes = net.node_count();
  out.n_edges = net.edge_count();
  if (net.empty()) return out;

  const auto clustering = clusc(net).values;
  double sum = 0.0;
  std::size_t counted = 0;
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    if (options.exclude_low_degree && net.degree(v) < 2) continue;
    sum += clustering[v];
    ++counted;
  }
  out.avg_clustering = counted > 0 ? sum / static_cast<double>(counted) : 0.0;

  const auto n = net.node_count();
  std::vector<std::uint64_t> dist_sum(n, 0), pairs(n, 0);
  std::vector<std::uint32_t> farthest(n, 0);
  constexpr std::size_t kBlock = 64;
  parallel_for((n + kBlock - 1) / kBlock, threads, [&](std::size_t b) {
    BfsWorkspace ws;
    for (auto s = b * kBlock; s < std::min(n, (b + 1) * kBlock); ++s) {
      bfs_from(net, static_cast<NodeIndex>(s), ws);
      for (const auto v : ws.order) {
        dist_sum[s] += ws.dist[v];
        farthest[s] = std::max(farthest[s], ws.dist[v]);
      }
      pairs[s] = ws.order.size() - 1;
    }
  });
  std::uint64_t total = 0, total_pairs = 0;
  for (std::size_t s = 0; s < n; ++s) {
    total += dist_sum[s];
    total_pairs += pairs[s];
    out.max_eccentricity = std::max<std::size_t>(out.max_eccentricity, farthest[s]);
  }
  out.avg_path_length = total_pairs > 0 ? static_cast<double>(total) / static_cast<double>(total_pairs) : 0.0;
  out.graphlet_freq = graphlet_frequencies(net, threads);
  return out;
}

SeriesReport series_report(const SnapshotSeries& series, const GlobalOptions& options,
                           unsigned threads) {
  SeriesReport report;
  report.age_labels = series.age_labels;
  report.rows.resize(series.size());
  // Snapshots are the unit of work; each snapshot's own passes run serially.
  parallel_for(series.size(), threads, [&](std::size_t i) {
    report.rows[i] = global_stats(series.snapshots[i], series.ages[i], options, 1);
  });
  if (series.size() >= 2) report.overlap = pairwise_overlap(series);
  return report;
}

void write_global_tsv(const SeriesReport& report, std::ostream& out) {
  out << "age\tn_nodes\tn_edges\tavg_clustering\tavg_path_length\tmax_eccentricity";
  for (int g = 0; g < graphlets::kGraphletCount; ++g) out << "\tg" << g;
  out << '\n';
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    out << report.age_labels[i] << '\t' << row.n_nodes << '\t' << row.n_edges << '\t'
        << text::format_double(row.avg_clustering) << '\t' << text::format_double(row.avg_path_length) << '\t'
        << row.max_eccentricity;
    for (const auto f : row.graphlet_freq) out << '\t' << f;
    out << '\n';
  }
}

void write_overlap_tsv(const SeriesReport& report, std::ostream& out) {
  out << "age_a\tage_b\tnode_overlap\tedge_overlap\n";
  const auto fmt = [](const std::optional<double>& v) { return v ? text::format_double(*v) : std::string("NA"); };
  for (std::size_t i = 0; i < report.overlap.size; ++i) {
    for (std::size_t j = 0; j < report.overlap.size; ++j) {
      out << report.age_labels[i] << '\t' << report.age_labels[j] << '\t' << fmt(report.overlap.node(i, j))
          << '\t' << fmt(report.overlap.edge(i, j)) << '\n';
    }
  }
}

}  // namespace dynanet
