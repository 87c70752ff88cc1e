#include <benchmark/benchmark.h>

#include "sense_or_send/closed_loop.hpp"
#include "sense_or_send/open_loop.hpp"
#include "sense_or_send/sim.hpp"

namespace {

const sos::ChannelConfig kChannel = sos::ChannelConfig::from_db(15.0, 10.0);

void bm_reduced_trellis(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sos::reduced_trellis_solve({0, 0, 0}, state.range(0), kChannel).root_value());
  }
  state.SetComplexityN(state.range(0));
}

void bm_full_backward_induction(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sos::full_backward_induction(state.range(0), kChannel).root_value());
  }
  state.SetComplexityN(state.range(0));
}

void bm_g_profile(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sos::g_profile({0, 0}, state.range(0), kChannel));
  }
  state.SetComplexityN(state.range(0));
}

void bm_closed_loop_batch(benchmark::State& state) {
  sos::TrialSpec spec;
  spec.horizon = 1000;
  spec.channel = kChannel;
  spec.policy.kind = sos::PolicyKind::ClosedLoop;
  spec.trials = 2000;
  spec.seed = 7;
  const sos::Simulator sim(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim.run_batch(static_cast<unsigned>(state.range(0))).mean_total_rate);
  }
  state.SetItemsProcessed(state.iterations() * spec.trials);
}

}  // namespace

BENCHMARK(bm_reduced_trellis)->RangeMultiplier(2)->Range(250, 4000)->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_full_backward_induction)->RangeMultiplier(2)->Range(25, 200)->Complexity(benchmark::oNCubed)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_g_profile)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNSquared);
BENCHMARK(bm_closed_loop_batch)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
