#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dynanet/centrality.hpp"
#include "dynanet/network.hpp"
#include "dynanet/series.hpp"

namespace dynanet {

enum class CorrelationMethod { kPearson, kSpearman };

std::string_view to_string(CorrelationMethod method);
std::optional<CorrelationMethod> parse_method(std::string_view name);

// Centrality of one gene across ages; 0 where the gene is absent.
struct Trajectory {
  NodeId gene;
  CentralityKind kind = CentralityKind::kDegc;
  std::vector<double> values;
  std::size_t n_active = 0;
};

// nullopt when either input is constant. Throws UsageError on a length
// mismatch or fewer than 3 points.
std::optional<double> correlate(std::span<const double> values, std::span<const double> ages,
                                CorrelationMethod method);

// Average ranks (1-based); ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct PermutationOptions {
  std::size_t n_perm = 1000;
  // p = (count + 1) / (n_perm + 1) instead of count / n_perm.
  bool pseudo_count = false;
  // Reshuffled r within this distance of the observed r counts as a tie.
  double tie_tolerance = 1e-12;
};

struct CorrelationResult {
  NodeId gene;
  CentralityKind kind = CentralityKind::kDegc;
  CorrelationMethod method = CorrelationMethod::kPearson;
  std::optional<double> r;
  std::optional<double> p;
  std::size_t n_perm = 0;
};

// One-sided in the direction of the observed r, ties included. An observed
// r of exactly 0 gives p = 1.
CorrelationResult permutation_pvalue(const Trajectory& trajectory, std::span<const double> ages,
                                     CorrelationMethod method, const PermutationOptions& options,
                                     std::uint64_t seed);

enum class Direction { kPositive, kNegative, kMixed };
std::string_view to_string(Direction direction);

struct KindResult {
  CentralityKind kind;
  std::optional<double> r;
  std::optional<double> p;
};

struct PredictionRecord {
  NodeId gene;
  std::size_t n_active = 0;
  std::vector<KindResult> per_kind;  // in the order of the kinds evaluated
  std::vector<CentralityKind> supporting;
  Direction direction = Direction::kPositive;
  double score = 0.0;
  std::size_t rank = 0;
};

struct PredictOptions {
  CorrelationMethod method = CorrelationMethod::kPearson;
  PermutationOptions permutation;
  double p_threshold = 0.01;
  std::size_t min_active = 5;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

struct PredictionSet {
  std::vector<CentralityKind> kinds;
  std::vector<PredictionRecord> predicted;  // ranked
  std::size_t evaluated = 0;
  std::size_t skipped_low_activity = 0;
};

// Trajectories may come in any order; each (gene, kind) gets its own random
// stream derived from the seed, so results do not depend on order or threads.
PredictionSet predict(std::span<const Trajectory> trajectories, std::span<const double> ages,
                      const PredictOptions& options = {});

// score = sum over supporting kinds of (1 - p); ties by mean |r| over the
// supporting kinds (larger first), then gene id. Assigns rank from 1.
void score_and_rank(std::vector<PredictionRecord>& records);

// Centralities of every universe gene on every snapshot.
std::vector<Trajectory> build_trajectories(const SnapshotSeries& series, std::span<const CentralityKind> kinds,
                                           unsigned threads = 1);

struct ControlOptions {
  PredictOptions predict;
  std::vector<CentralityKind> kinds{kAllCentralities.begin(), kAllCentralities.end()};
  std::size_t n_repeats = 100;
  std::uint64_t seed = 42;
};

struct ControlResult {
  std::size_t n_real = 0;
  std::vector<std::size_t> counts;  // one per repeat
  double mean = 0.0;
  std::optional<double> sd;        // sample sd; nullopt for fewer than 2 repeats
  std::optional<double> z;         // nullopt when sd is missing or 0
  double empirical_p = 0.0;        // fraction of repeats with count >= n_real
};

// Each repeat permutes which universe gene owns each activity row (per-age
// active counts are preserved), rebuilds the snapshots and reruns predict.
ControlResult randomized_control(const Network& static_net, const ActivityMatrix& activity,
                                 const ControlOptions& options);

}  // namespace dynanet
