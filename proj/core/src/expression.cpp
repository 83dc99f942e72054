#include "dynanet/expression.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "dynanet/error.hpp"
#include "dynanet/text.hpp"

namespace dynanet {

ExpressionMatrix::ExpressionMatrix(std::vector<NodeId> genes, std::vector<double> ages,
                                   std::vector<std::optional<double>> pvals) {
  if (pvals.size() != genes.size() * ages.size()) {
    throw ValidationError("expression matrix shape does not match genes x ages");
  }
  for (const auto& p : pvals) {
    if (p && !(*p >= 0.0 && *p <= 1.0)) {
      throw ValidationError("detection p-value " + text::format_double(*p) + " outside [0,1]");
    }
  }

  std::vector<std::size_t> order(ages.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ages[a] < ages[b]; });

  ages_.reserve(ages.size());
  std::map<double, int> seen;
  for (const auto c : order) {
    ages_.push_back(ages[c]);
    const int k = ++seen[ages[c]];
    auto label = text::format_double(ages[c]);
    if (k > 1) label += "#" + std::to_string(k);
    age_labels_.push_back(std::move(label));
  }

  const auto n_ages = ages.size();
  pvals_.resize(pvals.size());
  for (std::size_t g = 0; g < genes.size(); ++g) {
    for (std::size_t i = 0; i < n_ages; ++i) pvals_[g * n_ages + i] = pvals[g * n_ages + order[i]];
    if (!rows_.emplace(genes[g], g).second) {
      throw ValidationError("duplicate gene row '" + genes[g] + "'");
    }
  }
  genes_ = std::move(genes);
}

std::optional<std::size_t> ExpressionMatrix::row_of(std::string_view gene) const {
  const auto it = rows_.find(std::string(gene));
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

ExpressionMatrix parse_expression(std::string_view content, const std::string& source) {
  std::vector<NodeId> genes;
  std::vector<double> ages;
  std::vector<std::optional<double>> pvals;
  std::unordered_map<std::string, std::size_t> seen;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    const auto line = content.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    ++line_no;
    if (text::is_comment_or_blank(line)) continue;
    const auto fields = text::split_fields(line);
    if (!have_header) {
      if (fields.size() < 2) throw ParseError(source, line_no, "header needs a label and at least one age");
      for (std::size_t i = 1; i < fields.size(); ++i) {
        const auto age = text::parse_double(fields[i]);
        if (!age) throw ParseError(source, line_no, "non-numeric age '" + std::string(fields[i]) + "'");
        ages.push_back(*age);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != ages.size() + 1) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(ages.size() + 1) + " columns, found " +
                           std::to_string(fields.size()));
    }
    std::string gene(text::trim(fields[0]));
    if (gene.empty()) throw ParseError(source, line_no, "empty gene identifier");
    if (!seen.emplace(gene, line_no).second) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": duplicate gene row '" + gene + "'");
    }
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty() || fields[i] == "NA") {
        pvals.emplace_back(std::nullopt);
        continue;
      }
      const auto p = text::parse_double(fields[i]);
      if (!p) throw ParseError(source, line_no, "non-numeric p-value '" + std::string(fields[i]) + "'");
      if (!(*p >= 0.0 && *p <= 1.0)) {
        throw ValidationError(source + ":" + std::to_string(line_no) + ": p-value " +
                              std::string(fields[i]) + " outside [0,1]");
      }
      pvals.emplace_back(*p);
    }
    genes.push_back(std::move(gene));
  }
  if (!have_header) throw ParseError(source, 0, "expression file is empty");
  return ExpressionMatrix(std::move(genes), std::move(ages), std::move(pvals));
}

ExpressionMatrix load_expression(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open expression file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_expression(buffer.str(), path.string());
}

ActivityProfile activity(const ExpressionMatrix& matrix, std::string_view gene, double threshold) {
  const auto row = matrix.row_of(gene);
  if (!row) throw UsageError("gene '" + std::string(gene) + "' not in expression matrix");
  ActivityProfile profile{std::string(gene), std::vector<bool>(matrix.age_count(), false), 0};
  for (std::size_t i = 0; i < matrix.age_count(); ++i) {
    const auto p = matrix.pvalue(*row, i);
    if (p && *p < threshold) {
      profile.active[i] = true;
      ++profile.n_active;
    }
  }
  return profile;
}

}  // namespace dynanet
