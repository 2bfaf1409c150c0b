#include <benchmark/benchmark.h>

#include <vector>

#include "pcn/generators.h"
#include "pcn/pathfinding.h"
#include "pcn/sim.h"

namespace {

using namespace pcn;

void BM_HubSpokeUnidirectional(benchmark::State& state) {
  const ChannelGraph g = gen_hub_spoke(static_cast<std::size_t>(state.range(0)),
                                       {1.0, 0.01, 1e9});
  const Query q{*g.find("s1"), *g.find("s2"), 1000.0};
  const FeeMap fee = FeeMap::linear();
  for (auto _ : state) benchmark::DoNotOptimize(plan_unidirectional(g, q, fee));
}
BENCHMARK(BM_HubSpokeUnidirectional)->RangeMultiplier(10)->Range(10, 10000);

void BM_HubSpokeBidirectional(benchmark::State& state) {
  const ChannelGraph g = gen_hub_spoke(static_cast<std::size_t>(state.range(0)),
                                       {1.0, 0.01, 1e9});
  const Query q{*g.find("s1"), *g.find("s2"), 1000.0};
  const FeeMap fee = FeeMap::linear();
  for (auto _ : state) benchmark::DoNotOptimize(plan_partial_bidirectional(g, q, fee));
}
BENCHMARK(BM_HubSpokeBidirectional)->RangeMultiplier(10)->Range(10, 10000);

// Cycles through a fixed sample of feasible payments on a scale-free graph.
class ScaleFree : public benchmark::Fixture {
 public:
  void SetUp(const benchmark::State&) override {
    if (!payments.empty()) return;
    graph = gen_scale_free(ScaleFreeOptions{});
    payments = sample_payments(graph, 500, 7);
  }

  ChannelGraph graph;
  std::vector<Payment> payments;
};

BENCHMARK_F(ScaleFree, Unidirectional)(benchmark::State& state) {
  const FeeMap fee = FeeMap::linear();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_unidirectional(graph, to_query(payments[i]), fee));
    i = (i + 1) % payments.size();
  }
}

BENCHMARK_F(ScaleFree, PartialBidirectional)(benchmark::State& state) {
  const FeeMap fee = FeeMap::linear();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_partial_bidirectional(graph, to_query(payments[i]), fee));
    i = (i + 1) % payments.size();
  }
}

}  // namespace
BENCHMARK_MAIN();
