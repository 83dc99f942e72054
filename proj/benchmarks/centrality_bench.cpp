#include <benchmark/benchmark.h>

#include "dynanet/centrality.hpp"
#include "dynanet/models.hpp"

namespace {

dynanet::Network network(std::size_t n) {
  dynanet::ModelSpec spec;
  spec.family = dynanet::ModelFamily::kSF;
  spec.target_nodes = n;
  spec.target_edges = 3 * n;
  spec.seed = 2;
  return dynanet::generate(spec);
}

void BM_ShortestPathKinds(benchmark::State& state) {
  const auto net = network(static_cast<std::size_t>(state.range(0)));
  const std::array kinds{dynanet::CentralityKind::kBetwc, dynanet::CentralityKind::kClosec,
                         dynanet::CentralityKind::kEcc};
  for (auto _ : state) benchmark::DoNotOptimize(dynanet::compute_centralities(net, kinds));
}
BENCHMARK(BM_ShortestPathKinds)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_LocalKinds(benchmark::State& state) {
  const auto net = network(static_cast<std::size_t>(state.range(0)));
  const std::array kinds{dynanet::CentralityKind::kDegc, dynanet::CentralityKind::kClusc,
                         dynanet::CentralityKind::kKc};
  for (auto _ : state) benchmark::DoNotOptimize(dynanet::compute_centralities(net, kinds));
}
BENCHMARK(BM_LocalKinds)->Arg(2000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_AllKinds(benchmark::State& state) {
  const auto net = network(500);
  for (auto _ : state) benchmark::DoNotOptimize(dynanet::compute_centralities(net, dynanet::kAllCentralities));
}
BENCHMARK(BM_AllKinds)->Unit(benchmark::kMillisecond);

}  // namespace
