#include <benchmark/benchmark.h>

#include <random>

#include "bubblekit/bench_suite.hpp"
#include "bubblekit/bubbles.hpp"
#include "bubblekit/cascade.hpp"
#include "bubblekit/sizing.hpp"

namespace {

const std::vector<bk::u128>& keys() {
    static const auto v = bk::genome_kmers(1 << 19, 31, 3);
    return v;
}

// Arg = thread count; the 1-thread row is the serial reference.
void BM_CascadeBuild(benchmark::State& st) {
    const bk::SizingPlan plan = bk::plan_sizing(4, 31, bk::SizingMode::SingleR);
    bk::CascadeOptions o;
    o.threads = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(bk::build_cascade(keys(), 31, plan, o).total_bits());
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(keys().size()));
}
BENCHMARK(BM_CascadeBuild)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_CascadeQuery(benchmark::State& st) {
    static const bk::CascadingBloom c = bk::build_cascade(keys(), 31, bk::plan_sizing(4, 31, bk::SizingMode::SingleR));
    for (auto _ : st) benchmark::DoNotOptimize(bk::traversal_histogram(c, keys(), static_cast<int>(st.range(0))));
}
BENCHMARK(BM_CascadeQuery)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BoundedBubbles(benchmark::State& st) {
    std::mt19937_64 rng(11);
    const bk::Digraph g = bk::synthetic_cdbg(rng, static_cast<uint32_t>(st.range(0)));
    bk::BubbleConstraints c;
    c.alpha1 = c.alpha2 = 1000;
    for (auto _ : st) {
        uint64_t n = 0;
        for (uint32_t s = 0; s < g.n(); ++s)
            bk::list_bounded_bubbles(g, s, c, [&](const bk::Bubble&) { return ++n, true; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_BoundedBubbles)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BacktrackBubbles(benchmark::State& st) {
    std::mt19937_64 rng(11);
    const bk::Digraph g = bk::synthetic_cdbg(rng, static_cast<uint32_t>(st.range(0)));
    bk::BubbleConstraints c;
    c.alpha1 = c.alpha2 = 1000;
    for (auto _ : st) {
        uint64_t n = 0;
        for (uint32_t s = 0; s < g.n(); ++s)
            bk::enumerate_as_bubbles(g, s, c, [&](const bk::Bubble&) { return ++n, true; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_BacktrackBubbles)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
