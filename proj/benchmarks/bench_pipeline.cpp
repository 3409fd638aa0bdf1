#include <benchmark/benchmark.h>

#include "rodtree/grow.hpp"
#include "rodtree/metrics.hpp"
#include "rodtree/rfe.hpp"
#include "rodtree/rng.hpp"
#include "rodtree/sampling.hpp"
#include "rodtree/synth.hpp"

using namespace rodtree;

namespace {

const Dataset& default_data() {
    static const Dataset data = [] {
        GeneratorConfig config;
        config.seed = 42;
        return generate(config);
    }();
    return data;
}

const Dataset& balanced_train() {
    static const Dataset train = [] {
        const auto split = train_test_split(default_data(), 0.7, 42);
        return over_sample(split.train, 42);
    }();
    return train;
}

} // namespace

static void BM_Generate(benchmark::State& state) {
    GeneratorConfig config;
    config.seed = 42;
    config.n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate(config));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Generate)->Arg(1'000)->Arg(14'776);

static void BM_OverSample(benchmark::State& state) {
    const auto split = train_test_split(default_data(), 0.7, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(over_sample(split.train, 42));
    }
}
BENCHMARK(BM_OverSample);

static void BM_BestSplitScan(benchmark::State& state) {
    const Dataset& train = balanced_train();
    std::vector<int> all(train.schema().size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    for (auto _ : state) {
        benchmark::DoNotOptimize(best_split(train, all));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(train.size()));
}
BENCHMARK(BM_BestSplitScan);

// Budget 0 means unbounded growth.
static void BM_Grow(benchmark::State& state) {
    const Dataset& train = balanced_train();
    TreeParams params;
    params.max_leaf_nodes = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grow(train, params));
    }
}
BENCHMARK(BM_Grow)->Arg(4)->Arg(64)->Arg(1024)->Arg(0);

static void BM_RfeFull(benchmark::State& state) {
    const auto split = train_test_split(default_data(), 0.7, 42);
    TreeParams params;
    params.max_leaf_nodes = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_rfe(split.train, split.test,
                                         BalanceMethod{BalanceMethod::Variant::over, 42},
                                         params));
    }
}
BENCHMARK(BM_RfeFull)->Arg(4)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_AucRoc(benchmark::State& state) {
    Rng rng(7);
    const int n = static_cast<int>(state.range(0));
    std::vector<int> labels;
    std::vector<double> scores;
    for (int i = 0; i < n; ++i) {
        labels.push_back(rng.bernoulli(0.3) ? 1 : 0);
        scores.push_back(static_cast<double>(rng.below(64)) / 63.0);
    }
    labels[0] = 0;
    labels[1] = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(auc_roc(labels, scores));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_AucRoc)->Arg(10'000)->Arg(100'000);

BENCHMARK_MAIN();
