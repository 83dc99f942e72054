#include "dynanet/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <fstream>
#include <set>

#include "dynanet/error.hpp"
#include "dynanet/rng.hpp"
#include "dynanet/text.hpp"

namespace dynanet {

namespace {

std::string gene_name(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "GENE%04zu", i);
  return buf;
}

// Detection p-value for an active (below 0.04) or inactive (above) call.
double draw_pvalue(Rng& rng, bool active) {
  const double raw = active ? 0.001 + 0.035 * rng.uniform() : 0.05 + 0.95 * rng.uniform();
  return std::round(raw * 1e4) / 1e4;
}

}  // namespace

FixtureData make_fixture(const FixtureOptions& o) {
  Rng rng(o.seed);
  const auto n_ages = o.ages.size();
  if (n_ages < 4) throw UsageError("fixture needs at least 4 ages");
  const auto leaves = 3 * o.planted;
  const auto n = o.planted + leaves + 2 * o.decoy_pairs + o.background;

  // Random assignment of names to roles so that ids carry no information.
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i + 1;
  rng.shuffle(std::span<std::size_t>(ids));
  std::size_t next = 0;
  const auto take = [&] { return gene_name(ids[next++]); };

  FixtureData data;
  data.ages = o.ages;
  std::vector<std::vector<bool>> active;
  const auto add_gene = [&](const std::string& name, std::vector<bool> act) {
    data.genes.push_back(name);
    active.push_back(std::move(act));
  };
  const auto window = [&](std::size_t from, std::size_t to) {
    std::vector<bool> act(n_ages, false);
    for (auto a = from; a <= to; ++a) act[a] = true;
    return act;
  };

  for (std::size_t p = 0; p < o.planted; ++p) {
    const auto hub = take();
    data.planted.push_back(hub);
    add_gene(hub, std::vector<bool>(n_ages, true));
    for (std::size_t k = 0; k < 3; ++k) {
      const auto leaf = take();
      data.edges.emplace_back(hub, leaf);
      add_gene(leaf, window(0, 2 - k));
    }
  }
  for (std::size_t d = 0; d < o.decoy_pairs; ++d) {
    const auto span = d % 3;  // active at the last 1, 2 or 3 ages
    const auto a = take();
    const auto b = take();
    data.edges.emplace_back(a, b);
    add_gene(a, window(n_ages - 1 - span, n_ages - 1));
    add_gene(b, window(n_ages - 1 - span, n_ages - 1));
  }
  std::vector<std::string> background;
  for (std::size_t i = 0; i < o.background; ++i) {
    background.push_back(take());
    std::vector<bool> act(n_ages);
    for (std::size_t a = 0; a < n_ages; ++a) act[a] = rng.bernoulli(o.background_activity);
    add_gene(background.back(), std::move(act));
  }
  // Spanning path plus random chords keeps the background in one component.
  std::set<std::pair<std::size_t, std::size_t>> bg_edges;
  for (std::size_t i = 1; i < background.size(); ++i) bg_edges.emplace(i - 1, i);
  const auto max_bg = background.size() * (background.size() - 1) / 2;
  while (bg_edges.size() < std::min(o.background_edges, max_bg)) {
    auto u = rng.below(background.size());
    auto v = rng.below(background.size());
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    bg_edges.emplace(u, v);
  }
  for (const auto& [u, v] : bg_edges) data.edges.emplace_back(background[u], background[v]);

  for (std::size_t i = 0; i < o.expression_only; ++i) {
    std::vector<bool> act(n_ages);
    for (std::size_t a = 0; a < n_ages; ++a) act[a] = rng.bernoulli(0.5);
    add_gene(gene_name(n + 1 + i), std::move(act));
  }

  for (const auto& act : active) {
    std::vector<double> row(n_ages);
    for (std::size_t a = 0; a < n_ages; ++a) row[a] = draw_pvalue(rng, act[a]);
    data.pvals.push_back(std::move(row));
  }

  // Rows in name order, edges sorted, so the files read naturally.
  std::vector<std::size_t> order(data.genes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return data.genes[x] < data.genes[y]; });
  FixtureData sorted = data;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.genes[i] = data.genes[order[i]];
    sorted.pvals[i] = data.pvals[order[i]];
  }
  for (auto& [a, b] : sorted.edges) {
    if (b < a) std::swap(a, b);
  }
  std::sort(sorted.edges.begin(), sorted.edges.end());
  std::sort(sorted.planted.begin(), sorted.planted.end());
  return sorted;
}

FixtureData shuffle_fixture(const FixtureData& data, std::uint64_t seed) {
  std::set<NodeId> in_network;
  for (const auto& [a, b] : data.edges) {
    in_network.insert(a);
    in_network.insert(b);
  }
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < data.genes.size(); ++i) {
    if (in_network.contains(data.genes[i])) rows.push_back(i);
  }
  auto targets = rows;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(targets));
  FixtureData out = data;
  for (std::size_t k = 0; k < rows.size(); ++k) out.pvals[targets[k]] = data.pvals[rows[k]];
  return out;
}

ValidationFixture make_validation_fixture(const FixtureData& data, std::uint64_t seed) {
  Rng rng(seed);
  std::set<NodeId> in_network;
  for (const auto& [a, b] : data.edges) {
    in_network.insert(a);
    in_network.insert(b);
  }
  const std::vector<NodeId> network(in_network.begin(), in_network.end());
  std::vector<NodeId> off_network;
  for (const auto& g : data.genes) {
    if (!in_network.contains(g)) off_network.push_back(g);
  }
  const auto sample = [&](const std::vector<NodeId>& from, std::size_t k) {
    auto pool = from;
    rng.shuffle(std::span<NodeId>(pool));
    pool.resize(std::min(k, pool.size()));
    return pool;
  };
  const auto finish = [](std::vector<NodeId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };

  ValidationFixture out;
  {
    auto a = sample(data.planted, 14);
    for (auto& g : sample(network, 26)) a.push_back(std::move(g));
    a.push_back(off_network.front());  // outside the universe, dropped on load
    out.reference_sets.emplace_back("REF_A", finish(std::move(a)));
    out.reference_sets.emplace_back("REF_B", finish(sample(network, 30)));
  }

  static const char* const kExperimental[] = {"EXP", "IDA", "IPI", "IMP", "IGI", "IEP"};
  char term[16];
  for (std::size_t t = 0; t < 40; ++t) {
    std::snprintf(term, sizeof term, "GO:%07zu", 1000 + 7 * t);
    std::vector<NodeId> members;
    if (t < 8) {
      members = sample(data.planted, 6);
      for (auto& g : sample(network, 3)) members.push_back(std::move(g));
    } else {
      members = sample(network, 2 + rng.below(10));
    }
    for (auto& g : finish(std::move(members))) {
      out.go.emplace_back(g, term, kExperimental[rng.below(6)]);
      if (rng.bernoulli(0.1)) out.go.emplace_back(sample(network, 1).front(), term, "IEA");
    }
  }
  out.go.emplace_back(off_network.back(), "GO:0000999", "EXP");
  for (std::size_t t = 0; t < 15; ++t) {
    std::snprintf(term, sizeof term, "DOID:%04zu", 100 + 3 * t);
    std::vector<NodeId> members;
    if (t < 3) {
      members = sample(data.planted, 5);
      for (auto& g : sample(network, 2)) members.push_back(std::move(g));
    } else {
      members = sample(network, 2 + rng.below(8));
    }
    for (auto& g : finish(std::move(members))) out.disease.emplace_back(g, term);
  }
  std::sort(out.go.begin(), out.go.end());
  out.go.erase(std::unique(out.go.begin(), out.go.end()), out.go.end());
  std::sort(out.disease.begin(), out.disease.end());
  return out;
}

void write_validation_fixture(const ValidationFixture& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, members] : data.reference_sets) {
    std::ofstream out(dir / ("ref_" + name + ".txt"));
    for (const auto& g : members) out << g << '\n';
  }
  {
    std::ofstream out(dir / "go.tsv");
    out << "# gene\tterm\tevidence\n";
    for (const auto& [g, t, code] : data.go) out << g << '\t' << t << '\t' << code << '\n';
  }
  {
    std::ofstream out(dir / "do.tsv");
    out << "# gene\tterm\n";
    for (const auto& [g, t] : data.disease) out << g << '\t' << t << '\n';
  }
}

void write_fixture(const FixtureData& data, const std::filesystem::path& dir, const std::string& expression_name) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "network.tsv");
    out << "# synthetic static network\n";
    for (const auto& [a, b] : data.edges) out << a << '\t' << b << '\n';
  }
  {
    std::ofstream out(dir / expression_name);
    out << "gene";
    for (const auto age : data.ages) out << '\t' << text::format_double(age);
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < data.genes.size(); ++i) {
      out << data.genes[i];
      for (const auto p : data.pvals[i]) {
        std::snprintf(buf, sizeof buf, "%.4f", p);
        out << '\t' << buf;
      }
      out << '\n';
    }
  }
  {
    std::ofstream out(dir / "planted.txt");
    for (const auto& g : data.planted) out << g << '\n';
  }
}

}  // namespace dynanet
