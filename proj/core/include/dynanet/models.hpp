#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dynanet/graphlets.hpp"
#include "dynanet/network.hpp"

namespace dynanet {

enum class ModelFamily { kER, kERDD, kGEO, kGEOGD, kSF, kSFGD };

inline constexpr std::array<ModelFamily, 6> kAllFamilies = {
    ModelFamily::kER, ModelFamily::kERDD, ModelFamily::kGEO,
    ModelFamily::kGEOGD, ModelFamily::kSF, ModelFamily::kSFGD};

std::string_view to_string(ModelFamily family);
std::optional<ModelFamily> parse_family(std::string_view name);  // case-insensitive

struct ModelParams {
  // GEOGD: a child lands at distance 2 * geogd_r0 * u from its parent.
  double geogd_r0 = 0.1;
  // SFGD edge retention. Unset: calibrated by bisection to hit the edge target.
  std::optional<double> sfgd_p;
  double sfgd_q = 0.1;
  // SFGD grows from a clique on this many nodes.
  std::size_t sfgd_seed_nodes = 2;
  // ERDD performs swap_factor * |E| swap attempts.
  std::size_t erdd_swap_factor = 100;
  // Relative edge tolerance for the calibrated families (GEO, GEOGD, SFGD).
  double edge_tolerance = 0.02;
  int max_bisections = 60;
};

struct ModelSpec {
  ModelFamily family = ModelFamily::kER;
  std::size_t target_nodes = 0;
  std::size_t target_edges = 0;
  ModelParams params;
  std::uint64_t seed = 0;
};

// ERDD rewires `source`, whose node and edge counts must equal the targets;
// the other families ignore it. Generated node ids are "n0000", "n0001", ...
// so that index order equals creation order. Throws ValidationError when the
// spec is invalid or the edge target cannot be reached.
Network generate(const ModelSpec& spec, const Network* source = nullptr);

struct FamilyFit {
  ModelFamily family;
  std::vector<double> scores;
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single instance
  bool failed = false;
  std::string error;
};

struct FitReport {
  std::vector<FamilyFit> families;
  std::optional<ModelFamily> best_family;
};

struct FitOptions {
  std::size_t instances_per_family = 10;
  MeanMode mean_mode = MeanMode::kArithmetic;
  ModelParams params;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

FitReport evaluate_fit(const Network& data, std::span<const ModelFamily> families,
                       const FitOptions& options = {});

}  // namespace dynanet
