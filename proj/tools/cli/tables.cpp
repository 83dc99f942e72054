#include "tables.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "dynanet/error.hpp"
#include "dynanet/text.hpp"

namespace dynanet::cli {

namespace {

std::string opt_double(const std::optional<double>& v) { return v ? text::format_double(*v) : "NA"; }

}  // namespace

void write_centrality_table(const SnapshotSeries& series, CentralityKind kind,
                            std::span<const Trajectory> trajectories, std::ostream& out) {
  out << "gene";
  for (const auto& label : series.age_labels) out << '\t' << label;
  out << '\n';
  for (const auto& t : trajectories) {
    if (t.kind != kind) continue;
    out << t.gene;
    for (const auto v : t.values) out << '\t' << text::format_double(v);
    out << '\n';
  }
}

std::vector<Trajectory> read_centrality_table(const std::filesystem::path& path, CentralityKind kind,
                                              const SnapshotSeries& series) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  const auto source = path.string();
  const auto n_ages = series.size();

  std::unordered_map<std::string_view, std::size_t> row_of;
  for (std::size_t g = 0; g < series.universe.size(); ++g) row_of.emplace(series.universe[g], g);
  std::vector<Trajectory> out(series.universe.size());
  std::vector<bool> seen(series.universe.size(), false);

  std::size_t line_no = 0;
  bool header = true;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (text::is_comment_or_blank(line)) continue;
    const auto fields = text::split_fields(line);
    if (fields.size() != n_ages + 1) {
      throw ParseError(source, line_no, "expected " + std::to_string(n_ages + 1) + " columns, found " +
                                            std::to_string(fields.size()));
    }
    if (header) {
      for (std::size_t a = 0; a < n_ages; ++a) {
        if (fields[a + 1] != series.age_labels[a]) {
          throw ValidationError(source + ": column '" + std::string(fields[a + 1]) +
                                "' does not match series age '" + series.age_labels[a] + "'");
        }
      }
      header = false;
      continue;
    }
    const auto it = row_of.find(fields[0]);
    if (it == row_of.end()) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": gene '" + std::string(fields[0]) +
                            "' is not in the series universe");
    }
    if (seen[it->second]) throw ParseError(source, line_no, "duplicate gene '" + std::string(fields[0]) + "'");
    seen[it->second] = true;
    auto& t = out[it->second];
    t.gene = series.universe[it->second];
    t.kind = kind;
    t.values.resize(n_ages);
    for (std::size_t a = 0; a < n_ages; ++a) {
      const auto v = text::parse_double(fields[a + 1]);
      if (!v) throw ParseError(source, line_no, "bad number '" + std::string(fields[a + 1]) + "'");
      t.values[a] = *v;
    }
  }
  if (header) throw ParseError(source, 0, "empty table");
  const auto missing = std::count(seen.begin(), seen.end(), false);
  if (missing > 0) {
    throw ValidationError(source + ": " + std::to_string(missing) + " universe genes have no row");
  }
  // Activity comes from the series itself, not from the values.
  for (std::size_t g = 0; g < out.size(); ++g) {
    for (std::size_t a = 0; a < n_ages; ++a) {
      if (series.snapshots[a].contains(out[g].gene)) ++out[g].n_active;
    }
  }
  return out;
}

void write_predictions(const PredictionSet& set, std::ostream& out) {
  out << "rank\tgene\tscore\tdirection\tn_supporting";
  for (const auto k : set.kinds) out << '\t' << to_string(k) << "_r\t" << to_string(k) << "_p";
  out << '\n';
  for (const auto& rec : set.predicted) {
    out << rec.rank << '\t' << rec.gene << '\t' << text::format_double(rec.score) << '\t'
        << to_string(rec.direction) << '\t' << rec.supporting.size();
    for (const auto& kr : rec.per_kind) out << '\t' << opt_double(kr.r) << '\t' << opt_double(kr.p);
    out << '\n';
  }
}

std::vector<NodeId> read_prediction_genes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::size_t line_no = 0;
  std::optional<std::size_t> column;
  std::vector<NodeId> genes;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (text::is_comment_or_blank(line)) continue;
    const auto fields = text::split_fields(line);
    if (!column) {
      const auto it = std::find(fields.begin(), fields.end(), std::string_view("gene"));
      if (it == fields.end()) throw ParseError(path.string(), line_no, "no 'gene' column in header");
      column = static_cast<std::size_t>(it - fields.begin());
      continue;
    }
    if (fields.size() <= *column) throw ParseError(path.string(), line_no, "missing gene column");
    genes.emplace_back(text::trim(fields[*column]));
  }
  if (!column) throw ParseError(path.string(), 0, "empty table");
  return genes;
}

}  // namespace dynanet::cli
