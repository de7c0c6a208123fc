#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "agm/comparator.hpp"
#include "agm/fitter.hpp"
#include "agm/generator.hpp"
#include "agm/network_props.hpp"

using namespace agm;

namespace {

// Random communities of size 10..200 over n nodes, every node covered once
// before the extra memberships are drawn.
AffiliationNetwork random_network(std::size_t n, std::size_t communities, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NodeId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<NodeId>> comms(communities);
  for (std::size_t i = 0; i < n; ++i) comms[i % communities].push_back(order[i]);
  std::uniform_int_distribution<std::size_t> size(10, 200), node(0, n - 1);
  for (auto& c : comms) {
    const std::size_t target = size(rng);
    while (c.size() < target) c.push_back(static_cast<NodeId>(node(rng)));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return AffiliationNetwork(n, std::move(comms));
}

struct Instance {
  AffiliationNetwork net;
  AgmParams params;
  Graph graph;
};

Instance make_instance(std::size_t n) {
  Instance in;
  in.net = random_network(n, n / 20, 7);
  in.params = assign_probs_power_law(in.net, 0.4, 1.0);
  in.graph = generate(in.net, in.params, 11);
  return in;
}

void BM_Generate(benchmark::State& state) {
  const auto in = make_instance(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto g = generate(in.net, in.params, seed++);
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.counters["edges"] = static_cast<double>(in.graph.edge_count());
}
BENCHMARK(BM_Generate)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const auto in = make_instance(static_cast<std::size_t>(state.range(0)));
  const auto problem = FitProblem::build(in.graph, in.net, false);
  for (auto _ : state) {
    auto r = fit(problem);
    benchmark::DoNotOptimize(r.log_likelihood);
  }
}
BENCHMARK(BM_Fit)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_Triangles(benchmark::State& state) {
  const auto in = make_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto t = triangle_counts(in.graph);
    benchmark::DoNotOptimize(t.data());
  }
}
BENCHMARK(BM_Triangles)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_Spectral(benchmark::State& state) {
  const auto in = make_instance(static_cast<std::size_t>(state.range(0)));
  SpectralOptions opts;
  opts.k = 20;
  for (auto _ : state) {
    auto s = spectral_summary(in.graph, opts);
    benchmark::DoNotOptimize(s.eigenvalues.data());
  }
}
BENCHMARK(BM_Spectral)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_KsStatistic(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto make = [&] {
    Curve c;
    double x = 1.0;
    for (std::int64_t i = 0; i < state.range(0); ++i) {
      x += u(rng);
      c.points.push_back({x, u(rng)});
    }
    return c;
  };
  const Curve a = make(), b = make();
  for (auto _ : state) benchmark::DoNotOptimize(ks_statistic(a, b, AxisScale::log));
}
BENCHMARK(BM_KsStatistic)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
