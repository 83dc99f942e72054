#include "dynanet/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "dynanet/error.hpp"
#include "dynanet/parallel.hpp"
#include "dynanet/rng.hpp"

namespace dynanet {

std::string_view to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::kER: return "ER";
    case ModelFamily::kERDD: return "ERDD";
    case ModelFamily::kGEO: return "GEO";
    case ModelFamily::kGEOGD: return "GEOGD";
    case ModelFamily::kSF: return "SF";
    case ModelFamily::kSFGD: return "SFGD";
  }
  return "?";
}

std::optional<ModelFamily> parse_family(std::string_view name) {
  std::string upper(name);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto f : kAllFamilies) {
    if (to_string(f) == upper) return f;
  }
  return std::nullopt;
}

namespace {

using Pair = std::pair<std::uint32_t, std::uint32_t>;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::vector<std::string> node_names(std::size_t n) {
  const auto width = std::max<std::size_t>(4, std::to_string(n == 0 ? 0 : n - 1).size());
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto digits = std::to_string(i);
    names[i] = "n" + std::string(width - digits.size(), '0') + digits;
  }
  return names;
}

Network assemble(const std::vector<std::string>& names, const std::vector<Pair>& edges) {
  NetworkBuilder builder;
  for (const auto& name : names) builder.add_node(name);
  for (const auto& [a, b] : edges) builder.add_edge(names[a], names[b]);
  return builder.build();
}

bool within_tolerance(std::size_t edges, std::size_t target, double tolerance) {
  const auto slack = std::floor(tolerance * static_cast<double>(target));
  const auto diff = edges > target ? edges - target : target - edges;
  return static_cast<double>(diff) <= slack;
}

std::vector<Pair> erdos_renyi(std::size_t n, std::size_t m, Rng& rng) {
  const std::uint64_t total = n * (n - 1) / 2;
  const bool complement = m > total / 2;
  const auto draws = complement ? total - m : m;
  // Floyd's sampling of `draws` distinct pair indices.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(draws * 2);
  std::vector<std::uint64_t> picked;
  picked.reserve(draws);
  for (auto j = total - draws; j < total; ++j) {
    const auto t = rng.below(j + 1);
    const auto value = chosen.insert(t).second ? t : j;
    if (value == j) chosen.insert(j);
    picked.push_back(value);
  }
  std::vector<Pair> edges;
  edges.reserve(m);
  const auto decode = [](std::uint64_t idx) {
    // idx enumerates pairs (i < j) as j * (j - 1) / 2 + i.
    auto j = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
    while (j * (j - 1) / 2 > idx) --j;
    while ((j + 1) * j / 2 <= idx) ++j;
    return Pair{static_cast<std::uint32_t>(idx - j * (j - 1) / 2), static_cast<std::uint32_t>(j)};
  };
  if (!complement) {
    std::sort(picked.begin(), picked.end());
    for (const auto idx : picked) edges.push_back(decode(idx));
  } else {
    std::unordered_set<std::uint64_t> excluded(picked.begin(), picked.end());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      if (!excluded.contains(idx)) edges.push_back(decode(idx));
    }
  }
  return edges;
}

Network rewire(const Network& source, const ModelSpec& spec, Rng& rng) {
  std::vector<Pair> edges;
  edges.reserve(source.edge_count());
  std::unordered_set<std::uint64_t> present;
  present.reserve(source.edge_count() * 2);
  for (const auto& e : source.edges()) {
    edges.emplace_back(e.first, e.second);
    present.insert(pair_key(e.first, e.second));
  }
  const auto m = edges.size();
  if (m >= 2) {
    const auto attempts = spec.params.erdd_swap_factor * m;
    for (std::size_t t = 0; t < attempts; ++t) {
      const auto i = rng.below(m);
      const auto j = rng.below(m);
      if (i == j) continue;
      auto [a, b] = edges[i];
      auto [c, d] = edges[j];
      if (rng.next() & 1) std::swap(c, d);
      // (a,b),(c,d) -> (a,d),(c,b)
      if (a == d || c == b) continue;
      const auto k1 = pair_key(a, d);
      const auto k2 = pair_key(c, b);
      if (present.contains(k1) || present.contains(k2)) continue;
      present.erase(pair_key(a, b));
      present.erase(pair_key(c, d));
      present.insert(k1);
      present.insert(k2);
      edges[i] = {a, d};
      edges[j] = {c, b};
    }
  }
  NetworkBuilder builder;
  for (const auto& id : source.ids()) builder.add_node(id);
  for (const auto& [a, b] : edges) builder.add_edge(source.id(a), source.id(b));
  return builder.build();
}

struct Point {
  double x, y, z;
};

// All pairs within distance r, using a uniform grid of cell size >= r.
std::vector<Pair> radius_edges(const std::vector<Point>& pts, double r) {
  std::vector<Pair> edges;
  if (pts.size() < 2 || r <= 0.0) return edges;
  const int cells = std::clamp(static_cast<int>(1.0 / r), 1, 64);
  const auto cell_of = [&](double c) { return std::clamp(static_cast<int>(c * cells), 0, cells - 1); };
  std::vector<std::vector<std::uint32_t>> grid(static_cast<std::size_t>(cells) * cells * cells);
  const auto slot = [&](int x, int y, int z) { return (static_cast<std::size_t>(x) * cells + y) * cells + z; };
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    grid[slot(cell_of(pts[i].x), cell_of(pts[i].y), cell_of(pts[i].z))].push_back(i);
  }
  const double r2 = r * r;
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    const int cx = cell_of(pts[i].x), cy = cell_of(pts[i].y), cz = cell_of(pts[i].z);
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dz = -1; dz <= 1; ++dz) {
          const int x = cx + dx, y = cy + dy, z = cz + dz;
          if (x < 0 || y < 0 || z < 0 || x >= cells || y >= cells || z >= cells) continue;
          for (const auto j : grid[slot(x, y, z)]) {
            if (j <= i) continue;
            const double ex = pts[i].x - pts[j].x, ey = pts[i].y - pts[j].y, ez = pts[i].z - pts[j].z;
            if (ex * ex + ey * ey + ez * ez <= r2) edges.emplace_back(i, j);
          }
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

// Bisects the connection radius until the edge count is within tolerance.
std::vector<Pair> calibrate_radius(const std::vector<Point>& pts, const ModelSpec& spec) {
  const auto target = spec.target_edges;
  if (target == 0) return {};
  double lo = 0.0, hi = std::sqrt(3.0);
  for (int it = 0; it < spec.params.max_bisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    auto edges = radius_edges(pts, mid);
    if (within_tolerance(edges.size(), target, spec.params.edge_tolerance)) return edges;
    (edges.size() < target ? lo : hi) = mid;
  }
  throw ValidationError("geometric model: no connection radius gives " + std::to_string(target) +
                        " edges within the " + std::to_string(spec.params.edge_tolerance * 100.0) +
                        "% tolerance after " + std::to_string(spec.params.max_bisections) + " bisections");
}

double reflect(double c) {
  c = std::fmod(std::abs(c), 2.0);
  return c > 1.0 ? 2.0 - c : c;
}

std::vector<Point> geogd_points(std::size_t n, const ModelSpec& spec, Rng& rng) {
  std::vector<Point> pts;
  pts.reserve(n);
  const auto seed_size = std::min<std::size_t>(5, n);
  for (std::size_t i = 0; i < seed_size; ++i) pts.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
  while (pts.size() < n) {
    const auto parent = pts[rng.below(pts.size())];
    const double dist = 2.0 * spec.params.geogd_r0 * rng.uniform();
    // Uniform direction on the sphere.
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = 2.0 * std::acos(-1.0) * rng.uniform();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.push_back({reflect(parent.x + dist * s * std::cos(phi)), reflect(parent.y + dist * s * std::sin(phi)),
                   reflect(parent.z + dist * z)});
  }
  return pts;
}

std::vector<Pair> scale_free(std::size_t n, std::size_t m, Rng& rng) {
  const auto per_node = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(m) / static_cast<double>(n))));
  const auto core = std::min(n, per_node + 1);
  const auto core_edges = core * (core - 1) / 2;
  if (core_edges > m) {
    throw ValidationError("SF model: the seed clique on " + std::to_string(core) + " nodes already exceeds " +
                          std::to_string(m) + " edges");
  }
  std::vector<Pair> edges;
  edges.reserve(m);
  std::vector<std::uint32_t> endpoints;  // node repeated once per incident edge
  endpoints.reserve(2 * m);
  std::vector<std::size_t> degree(n, 0);
  std::size_t connected = 0;
  const auto link = [&](std::uint32_t a, std::uint32_t b) {
    edges.emplace_back(a, b);
    for (const auto v : {a, b}) {
      endpoints.push_back(v);
      if (degree[v]++ == 0) ++connected;
    }
  };
  for (std::uint32_t j = 1; j < core; ++j) {
    for (std::uint32_t i = 0; i < j; ++i) link(i, j);
  }
  const auto arrivals = n - core;
  const auto remaining = m - core_edges;
  if (arrivals == 0 && remaining > 0) {
    throw ValidationError("SF model: " + std::to_string(m) + " edges do not fit on " + std::to_string(n) + " nodes");
  }
  std::vector<std::uint32_t> targets;
  for (std::size_t k = 0; k < arrivals; ++k) {
    const auto node = static_cast<std::uint32_t>(core + k);
    // Remaining edges are spread evenly over arrivals so the total is exact.
    const auto want = (k + 1) * remaining / arrivals - k * remaining / arrivals;
    if (want > node) {
      throw ValidationError("SF model: node " + std::to_string(node) + " would need " + std::to_string(want) +
                            " distinct targets; the edge target is too dense for preferential attachment");
    }
    targets.clear();
    const auto take = [&](std::uint32_t t) {
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    };
    // Degree-proportional choice among connected nodes, uniform once they run out.
    const auto preferential = std::min(want, connected);
    while (targets.size() < preferential) take(endpoints[rng.below(endpoints.size())]);
    while (targets.size() < want) take(static_cast<std::uint32_t>(rng.below(node)));
    for (const auto t : targets) link(t, node);
  }
  return edges;
}

// Duplication with mutation. Parent choices and the q-links come from `rng`;
// whether child c keeps the copy of edge (parent, w) is decided by a hash of
// (stream, c, w) compared with p, so for a fixed stream the edge set only grows
// with p.
std::vector<Pair> duplication(std::size_t n, double p, double q, std::size_t seed_nodes, std::uint64_t stream) {
  Rng rng(stream);
  std::vector<std::vector<std::uint32_t>> adj(n);
  std::vector<Pair> edges;
  const auto core = static_cast<std::uint32_t>(std::min(n, std::max<std::size_t>(seed_nodes, 1)));
  for (std::uint32_t j = 1; j < core; ++j) {
    for (std::uint32_t i = 0; i < j; ++i) {
      adj[i].push_back(j);
      adj[j].push_back(i);
      edges.emplace_back(i, j);
    }
  }
  const auto keep_draw = [&](std::uint32_t child, std::uint32_t w) {
    return static_cast<double>(mix64(derive_seed(stream, child, w)) >> 11) * 0x1.0p-53;
  };
  for (std::uint32_t child = core; child < n; ++child) {
    const auto parent = static_cast<std::uint32_t>(rng.below(child));
    const bool link_parent = rng.uniform() < q;
    std::vector<std::uint32_t> kept;
    for (const auto w : adj[parent]) {
      if (keep_draw(child, w) < p) kept.push_back(w);
    }
    if (link_parent) kept.push_back(parent);
    std::sort(kept.begin(), kept.end());
    for (const auto w : kept) {
      adj[w].push_back(child);
      adj[child].push_back(w);
      edges.emplace_back(w, child);
    }
  }
  return edges;
}

// Edge count is monotone in p but can jump where an early kept edge gets
// copied many times; when the target falls into such a gap the search moves
// on to a fresh stream.
std::vector<Pair> calibrate_duplication(const ModelSpec& spec, std::uint64_t stream) {
  const auto n = spec.target_nodes;
  const auto q = spec.params.sfgd_q;
  const auto seed_nodes = spec.params.sfgd_seed_nodes;
  if (spec.params.sfgd_p) return duplication(n, *spec.params.sfgd_p, q, seed_nodes, stream);
  const auto target = spec.target_edges;
  const auto tol = spec.params.edge_tolerance;
  constexpr int kStreams = 32;
  std::size_t ceiling = 0;
  for (int attempt = 0; attempt < kStreams; ++attempt) {
    const auto s = derive_seed(stream, attempt);
    auto full = duplication(n, 1.0, q, seed_nodes, s);
    if (within_tolerance(full.size(), target, tol)) return full;
    ceiling = std::max(ceiling, full.size());
    if (full.size() < target) continue;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < spec.params.max_bisections; ++it) {
      const double mid = 0.5 * (lo + hi);
      auto edges = duplication(n, mid, q, seed_nodes, s);
      if (within_tolerance(edges.size(), target, tol)) return edges;
      (edges.size() < target ? lo : hi) = mid;
    }
  }
  if (ceiling < target) {
    throw ValidationError("SFGD model: even full edge retention (p = 1) yields at most " + std::to_string(ceiling) +
                          " of " + std::to_string(target) + " edges (q = " + std::to_string(q) + ")");
  }
  throw ValidationError("SFGD model: no retention probability gives " + std::to_string(target) +
                        " edges within tolerance (q = " + std::to_string(q) + ")");
}

}  // namespace

Network generate(const ModelSpec& spec, const Network* source) {
  const auto n = spec.target_nodes;
  const auto m = spec.target_edges;
  if (n < 1) throw ValidationError("model spec: target_nodes must be at least 1");
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > max_edges) {
    throw ValidationError("model spec: target_edges " + std::to_string(m) + " exceeds C(" + std::to_string(n) +
                          ", 2) = " + std::to_string(max_edges));
  }
  Rng rng(spec.seed);
  switch (spec.family) {
    case ModelFamily::kER:
      return assemble(node_names(n), erdos_renyi(n, m, rng));
    case ModelFamily::kERDD:
      if (source == nullptr) throw UsageError("ERDD needs a source network to rewire");
      if (source->node_count() != n || source->edge_count() != m) {
        throw ValidationError("ERDD: source network size does not match the target node and edge counts");
      }
      return rewire(*source, spec, rng);
    case ModelFamily::kGEO: {
      std::vector<Point> pts(n);
      for (auto& pt : pts) pt = {rng.uniform(), rng.uniform(), rng.uniform()};
      return assemble(node_names(n), calibrate_radius(pts, spec));
    }
    case ModelFamily::kGEOGD:
      return assemble(node_names(n), calibrate_radius(geogd_points(n, spec, rng), spec));
    case ModelFamily::kSF:
      return assemble(node_names(n), scale_free(n, m, rng));
    case ModelFamily::kSFGD:
      return assemble(node_names(n), calibrate_duplication(spec, rng.next()));
  }
  throw UsageError("unknown model family");
}

FitReport evaluate_fit(const Network& data, std::span<const ModelFamily> families, const FitOptions& options) {
  if (options.instances_per_family < 1) throw UsageError("instances_per_family must be at least 1");
  if (data.empty()) throw UsageError("cannot fit models to an empty network");
  const auto data_gdd = degree_distribution(count_orbits(data, options.threads));

  const auto per = options.instances_per_family;
  const auto tasks = families.size() * per;
  std::vector<double> scores(tasks, 0.0);
  std::vector<std::string> errors(tasks);
  parallel_for(tasks, options.threads, [&](std::size_t t) {
    const auto family = families[t / per];
    ModelSpec spec;
    spec.family = family;
    spec.target_nodes = data.node_count();
    spec.target_edges = data.edge_count();
    spec.params = options.params;
    spec.seed = derive_seed(options.seed, static_cast<std::uint64_t>(family), t % per);
    try {
      const auto instance = generate(spec, &data);
      scores[t] = gdd_agreement(data_gdd, degree_distribution(count_orbits(instance, 1)), options.mean_mode);
    } catch (const std::exception& e) {
      errors[t] = e.what();
    }
  });

  FitReport report;
  for (std::size_t f = 0; f < families.size(); ++f) {
    FamilyFit fit{families[f], {}, 0.0, 0.0, false, {}};
    for (std::size_t i = 0; i < per; ++i) {
      const auto t = f * per + i;
      if (!errors[t].empty()) {
        fit.failed = true;
        fit.error = errors[t];
        fit.scores.clear();
        break;
      }
      fit.scores.push_back(scores[t]);
    }
    if (!fit.failed) {
      const auto k = static_cast<double>(fit.scores.size());
      fit.mean = std::accumulate(fit.scores.begin(), fit.scores.end(), 0.0) / k;
      if (fit.scores.size() > 1) {
        double ss = 0.0;
        for (const auto s : fit.scores) ss += (s - fit.mean) * (s - fit.mean);
        fit.sd = std::sqrt(ss / (k - 1.0));
      }
    }
    report.families.push_back(std::move(fit));
  }
  const FamilyFit* best = nullptr;
  for (const auto& fit : report.families) {
    if (fit.failed) continue;
    if (best == nullptr || fit.mean > best->mean ||
        (fit.mean == best->mean && to_string(fit.family) < to_string(best->family))) {
      best = &fit;
    }
  }
  if (best != nullptr) report.best_family = best->family;
  return report;
}

}  // namespace dynanet
