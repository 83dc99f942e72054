#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dynanet/network.hpp"

namespace dynanet {

inline constexpr double kDefaultDetectionThreshold = 0.04;

// Genes x ages matrix of detection p-values. Columns are sorted by age; a
// repeated age keeps every sample and gets a "#k" suffix on its label.
class ExpressionMatrix {
 public:
  ExpressionMatrix() = default;
  ExpressionMatrix(std::vector<NodeId> genes, std::vector<double> ages,
                   std::vector<std::optional<double>> pvals);

  std::size_t gene_count() const noexcept { return genes_.size(); }
  std::size_t age_count() const noexcept { return ages_.size(); }

  const std::vector<NodeId>& genes() const noexcept { return genes_; }
  const std::vector<double>& ages() const noexcept { return ages_; }
  const std::vector<std::string>& age_labels() const noexcept { return age_labels_; }

  std::optional<std::size_t> row_of(std::string_view gene) const;
  // nullopt means MISSING.
  std::optional<double> pvalue(std::size_t row, std::size_t age) const {
    return pvals_[row * ages_.size() + age];
  }

 private:
  std::vector<NodeId> genes_;
  std::vector<double> ages_;
  std::vector<std::string> age_labels_;
  std::vector<std::optional<double>> pvals_;
  std::unordered_map<std::string, std::size_t> rows_;
};

struct ActivityProfile {
  NodeId gene;
  std::vector<bool> active;
  std::size_t n_active = 0;
};

// Header: a label cell followed by numeric ages. Rows: gene id then p-values;
// empty cells and "NA" are MISSING.
ExpressionMatrix load_expression(const std::filesystem::path& path);
ExpressionMatrix parse_expression(std::string_view content, const std::string& source = "<memory>");

// active[i] iff the p-value at age i is present and strictly below threshold.
ActivityProfile activity(const ExpressionMatrix& matrix, std::string_view gene,
                         double threshold = kDefaultDetectionThreshold);

}  // namespace dynanet
