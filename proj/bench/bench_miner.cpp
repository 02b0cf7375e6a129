#include <benchmark/benchmark.h>

#include "seqrfm/datagen.hpp"
#include "seqrfm/miner.hpp"

namespace {

const seqrfm::MTDatabase& workload() {
  static const seqrfm::MTDatabase db = [] {
    seqrfm::GenParams gp;
    gp.sequence_count = 2000;
    gp.distinct_items = 200;
    gp.avg_itemsets = 5;
    gp.avg_items = 2;
    gp.seed = 7;
    return seqrfm::generate(gp);
  }();
  return db;
}

seqrfm::Params params() {
  seqrfm::Params p;
  p.delta = 0.01;
  p.alpha = 0;
  p.beta = 0.005;
  p.gamma = 0.0005;
  p.theta = 500;
  return p;
}

void BM_Serial(benchmark::State& state) {
  const auto& db = workload();
  for (auto _ : state) {
    std::size_t n = 0;
    seqrfm::mine_serial(db, params(), {}, [&](seqrfm::PatternRecord&&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
}

void BM_Parallel(benchmark::State& state) {
  const auto& db = workload();
  seqrfm::MinerOptions opt;
  opt.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = seqrfm::mine_parallel(db, params(), opt);
    benchmark::DoNotOptimize(r.patterns.size());
  }
}

}  // namespace

BENCHMARK(BM_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
