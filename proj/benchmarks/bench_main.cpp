#include <benchmark/benchmark.h>

#include <vector>

#include "shepherd/engine.hpp"
#include "shepherd/model.hpp"

namespace {

using namespace shepherd;

void BM_Tick(benchmark::State& state) {
  ModelParams p;
  p.sheep_count = static_cast<std::size_t>(state.range(0));
  p = with_derived_offsets(p);
  const EpisodeConfig c = make_episode_config(p, 0, 2, 2, 1);
  EpisodeStreams streams(c.seed);
  const WorldState start = init_world(p, streams.init);
  WorldState w = start;
  TickScratch scratch;
  for (auto _ : state) {
    if (w.step + 1 >= p.step_limit) w = start;
    benchmark::DoNotOptimize(tick(w, c, streams, scratch));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Tick)->Arg(25)->Arg(100)->Arg(400);

void BM_NearestNeighbors(benchmark::State& state) {
  Rng rng(3);
  std::vector<Vec2> pos(static_cast<std::size_t>(state.range(0)));
  for (auto& q : pos) q = {rng.uniform(37.5, 112.5), rng.uniform(37.5, 112.5)};
  NeighborFinder finder;
  std::vector<std::size_t> out;
  std::size_t i = 0;
  for (auto _ : state) {
    finder.find(i, pos, 25, out);
    benchmark::DoNotOptimize(out.data());
    i = (i + 1) % pos.size();
  }
}
BENCHMARK(BM_NearestNeighbors)->Arg(100)->Arg(1000);

void BM_Episode(benchmark::State& state) {
  const ModelParams p;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const EpisodeConfig c = make_episode_config(p, 0, 0, static_cast<int>(state.range(0)), ++seed);
    benchmark::DoNotOptimize(run_episode(c).result);
  }
}
BENCHMARK(BM_Episode)->Arg(0)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
