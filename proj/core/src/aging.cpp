#include "dynanet/aging.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "dynanet/error.hpp"
#include "dynanet/parallel.hpp"
#include "dynanet/rng.hpp"

namespace dynanet {

std::string_view to_string(CorrelationMethod method) {
  return method == CorrelationMethod::kPearson ? "pearson" : "spearman";
}

std::optional<CorrelationMethod> parse_method(std::string_view name) {
  std::string lower(name);
  for (auto& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "pearson") return CorrelationMethod::kPearson;
  if (lower == "spearman") return CorrelationMethod::kSpearman;
  return std::nullopt;
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::kPositive: return "positive";
    case Direction::kNegative: return "negative";
    case Direction::kMixed: return "mixed";
  }
  return "?";
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    auto j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (auto k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

namespace {

// Centred copy of x plus its root sum of squares.
struct Centred {
  std::vector<double> values;
  double norm = 0.0;
};

Centred centre(std::span<const double> x) {
  Centred c;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  c.values.reserve(x.size());
  double ss = 0.0;
  for (const auto v : x) {
    c.values.push_back(v - mean);
    ss += (v - mean) * (v - mean);
  }
  c.norm = std::sqrt(ss);
  return c;
}

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

void check_lengths(std::size_t values, std::size_t ages) {
  if (values != ages) {
    throw UsageError("trajectory has " + std::to_string(values) + " values for " + std::to_string(ages) + " ages");
  }
  if (values < 3) throw UsageError("correlation needs at least 3 ages");
}

std::vector<double> transform(std::span<const double> x, CorrelationMethod method) {
  if (method == CorrelationMethod::kSpearman) return average_ranks(x);
  return {x.begin(), x.end()};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::optional<double> correlate(std::span<const double> values, std::span<const double> ages,
                                CorrelationMethod method) {
  check_lengths(values.size(), ages.size());
  if (is_constant(values) || is_constant(ages)) return std::nullopt;
  const auto x = centre(transform(values, method));
  const auto y = centre(transform(ages, method));
  return std::clamp(dot(x.values, y.values) / (x.norm * y.norm), -1.0, 1.0);
}

CorrelationResult permutation_pvalue(const Trajectory& trajectory, std::span<const double> ages,
                                     CorrelationMethod method, const PermutationOptions& options,
                                     std::uint64_t seed) {
  check_lengths(trajectory.values.size(), ages.size());
  CorrelationResult out{trajectory.gene, trajectory.kind, method, std::nullopt, std::nullopt, options.n_perm};
  const std::span<const double> values(trajectory.values);
  if (is_constant(values) || is_constant(ages)) return out;
  if (options.n_perm == 0) throw UsageError("n_perm must be at least 1");

  // Reshuffling permutes the transformed values; the centring and the norms
  // are permutation invariant, so only the dot product is recomputed.
  auto x = centre(transform(values, method));
  const auto y = centre(transform(ages, method));
  const double denom = x.norm * y.norm;
  const double observed = dot(x.values, y.values) / denom;
  out.r = std::clamp(observed, -1.0, 1.0);

  std::size_t count = 0;
  if (observed == 0.0) {
    count = options.n_perm;
  } else {
    Rng rng(seed);
    for (std::size_t k = 0; k < options.n_perm; ++k) {
      rng.shuffle(std::span<double>(x.values));
      const double r = dot(x.values, y.values) / denom;
      const bool as_good = observed > 0 ? r >= observed - options.tie_tolerance
                                        : r <= observed + options.tie_tolerance;
      if (as_good) ++count;
    }
  }
  const auto n = static_cast<double>(options.n_perm);
  out.p = options.pseudo_count ? (static_cast<double>(count) + 1.0) / (n + 1.0) : static_cast<double>(count) / n;
  return out;
}

void score_and_rank(std::vector<PredictionRecord>& records) {
  std::vector<double> mean_abs_r(records.size(), 0.0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& rec = records[i];
    double score = 0.0, abs_r = 0.0;
    for (const auto& kr : rec.per_kind) {
      if (std::find(rec.supporting.begin(), rec.supporting.end(), kr.kind) == rec.supporting.end()) continue;
      score += 1.0 - *kr.p;
      abs_r += std::abs(*kr.r);
    }
    rec.score = score;
    if (!rec.supporting.empty()) mean_abs_r[i] = abs_r / static_cast<double>(rec.supporting.size());
  }
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (records[a].score != records[b].score) return records[a].score > records[b].score;
    if (mean_abs_r[a] != mean_abs_r[b]) return mean_abs_r[a] > mean_abs_r[b];
    return records[a].gene < records[b].gene;
  });
  std::vector<PredictionRecord> sorted;
  sorted.reserve(records.size());
  for (const auto i : order) sorted.push_back(std::move(records[i]));
  for (std::size_t i = 0; i < sorted.size(); ++i) sorted[i].rank = i + 1;
  records = std::move(sorted);
}

PredictionSet predict(std::span<const Trajectory> trajectories, std::span<const double> ages,
                      const PredictOptions& options) {
  PredictionSet out;
  std::map<NodeId, std::vector<const Trajectory*>> by_gene;
  for (const auto& t : trajectories) {
    by_gene[t.gene].push_back(&t);
    if (std::find(out.kinds.begin(), out.kinds.end(), t.kind) == out.kinds.end()) out.kinds.push_back(t.kind);
  }
  std::sort(out.kinds.begin(), out.kinds.end());

  std::vector<std::pair<const NodeId*, std::vector<const Trajectory*>*>> genes;
  for (auto& [gene, list] : by_gene) {
    std::sort(list.begin(), list.end(), [](auto a, auto b) { return a->kind < b->kind; });
    if (list.front()->n_active < options.min_active) {
      ++out.skipped_low_activity;
      continue;
    }
    genes.emplace_back(&gene, &list);
  }
  out.evaluated = genes.size();

  std::vector<std::optional<PredictionRecord>> slots(genes.size());
  parallel_for(genes.size(), options.threads, [&](std::size_t g) {
    const auto& gene = *genes[g].first;
    PredictionRecord rec;
    rec.gene = gene;
    rec.n_active = genes[g].second->front()->n_active;
    const auto gene_stream = hash_string(gene);
    for (const auto* t : *genes[g].second) {
      const auto seed = derive_seed(options.seed, gene_stream, static_cast<std::uint64_t>(t->kind));
      const auto res = permutation_pvalue(*t, ages, options.method, options.permutation, seed);
      rec.per_kind.push_back({t->kind, res.r, res.p});
      if (res.p && *res.p < options.p_threshold) rec.supporting.push_back(t->kind);
    }
    if (rec.supporting.empty()) return;
    bool any_pos = false, any_neg = false;
    for (const auto& kr : rec.per_kind) {
      if (std::find(rec.supporting.begin(), rec.supporting.end(), kr.kind) == rec.supporting.end()) continue;
      (*kr.r > 0 ? any_pos : any_neg) = true;
    }
    rec.direction = any_pos && any_neg ? Direction::kMixed : any_pos ? Direction::kPositive : Direction::kNegative;
    slots[g] = std::move(rec);
  });
  for (auto& s : slots) {
    if (s) out.predicted.push_back(std::move(*s));
  }
  score_and_rank(out.predicted);
  return out;
}

std::vector<Trajectory> build_trajectories(const SnapshotSeries& series, std::span<const CentralityKind> kinds,
                                           unsigned threads) {
  const auto n_ages = series.size();
  const auto n_genes = series.universe.size();
  // cent[age][kind][gene]
  std::vector<std::vector<std::vector<double>>> cent(n_ages);
  std::vector<std::vector<bool>> present(n_ages, std::vector<bool>(n_genes, false));
  const auto work = [&](std::size_t a, unsigned inner) {
    const auto& snap = series.snapshots[a];
    const auto maps = compute_centralities(snap, kinds, inner);
    cent[a].assign(kinds.size(), std::vector<double>(n_genes, 0.0));
    // Snapshot nodes and the universe are both sorted.
    std::size_t g = 0;
    for (NodeIndex v = 0; v < snap.node_count(); ++v) {
      while (g < n_genes && series.universe[g] < snap.id(v)) ++g;
      if (g == n_genes || series.universe[g] != snap.id(v)) {
        throw ValidationError("snapshot node '" + snap.id(v) + "' is not in the universe");
      }
      present[a][g] = true;
      for (std::size_t k = 0; k < kinds.size(); ++k) cent[a][k][g] = maps[k].values[v];
    }
  };
  const auto workers = resolve_threads(threads);
  if (n_ages >= workers) {
    parallel_for(n_ages, workers, [&](std::size_t a) { work(a, 1); });
  } else {
    for (std::size_t a = 0; a < n_ages; ++a) work(a, workers);
  }

  std::vector<Trajectory> out;
  out.reserve(n_genes * kinds.size());
  for (std::size_t g = 0; g < n_genes; ++g) {
    std::size_t n_active = 0;
    for (std::size_t a = 0; a < n_ages; ++a) n_active += present[a][g] ? 1 : 0;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      Trajectory t{series.universe[g], kinds[k], std::vector<double>(n_ages), n_active};
      for (std::size_t a = 0; a < n_ages; ++a) t.values[a] = cent[a][k][g];
      out.push_back(std::move(t));
    }
  }
  return out;
}

ControlResult randomized_control(const Network& static_net, const ActivityMatrix& activity,
                                 const ControlOptions& options) {
  if (options.n_repeats < 1) throw UsageError("n_repeats must be at least 1");
  const auto run = [&](const ActivityMatrix& matrix, std::uint64_t seed) {
    const auto series = build_series(static_net, matrix, options.predict.threads);
    const auto trajectories = build_trajectories(series, options.kinds, options.predict.threads);
    auto popts = options.predict;
    popts.seed = seed;
    return predict(trajectories, series.ages, popts).predicted.size();
  };

  ControlResult out;
  out.n_real = run(activity, options.predict.seed);
  out.counts.reserve(options.n_repeats);
  for (std::size_t rep = 0; rep < options.n_repeats; ++rep) {
    Rng rng(derive_seed(options.seed, 0x5eedULL, rep));
    ActivityMatrix shuffled = activity;
    rng.shuffle(std::span<std::vector<bool>>(shuffled.active));
    out.counts.push_back(run(shuffled, derive_seed(options.predict.seed, rep + 1)));
  }
  const auto k = static_cast<double>(out.counts.size());
  out.mean = std::accumulate(out.counts.begin(), out.counts.end(), 0.0) / k;
  std::size_t at_least = 0;
  double ss = 0.0;
  for (const auto c : out.counts) {
    ss += (static_cast<double>(c) - out.mean) * (static_cast<double>(c) - out.mean);
    if (c >= out.n_real) ++at_least;
  }
  out.empirical_p = static_cast<double>(at_least) / k;
  if (out.counts.size() >= 2) {
    out.sd = std::sqrt(ss / (k - 1.0));
    if (*out.sd > 0.0) out.z = (static_cast<double>(out.n_real) - out.mean) / *out.sd;
  }
  return out;
}

}  // namespace dynanet
