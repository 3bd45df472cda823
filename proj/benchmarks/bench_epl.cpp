#include <benchmark/benchmark.h>

#include <epl/data.hpp>
#include <epl/distribution.hpp>
#include <epl/estimation.hpp>
#include <epl/gof.hpp>
#include <epl/moments.hpp>

static const epl::EplParams kParams(1.0, 1.0);

static void BM_Pdf(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(epl::pdf(x, kParams));
        x = (x < 5.0) ? x + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_Pdf);

static void BM_Cdf(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(epl::cdf(x, kParams));
        x = (x < 5.0) ? x + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_Cdf);

static void BM_QuantileRootFinding(benchmark::State& state) {
    double u = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(epl::quantile(u, kParams));
        u = (u < 0.99) ? u + 1e-3 : 0.01;
    }
}
BENCHMARK(BM_QuantileRootFinding);

static void BM_QuantileClosedForm(benchmark::State& state) {
    double u = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(epl::quantile_closed_form(u, kParams));
        u = (u < 0.99) ? u + 1e-3 : 0.01;
    }
}
BENCHMARK(BM_QuantileClosedForm);

static void BM_Sample(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(epl::sample(n, kParams, seed++));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(100000);

static void BM_FitAircon(benchmark::State& state) {
    const epl::DataSet data = epl::fixtures::aircon();
    for (auto _ : state) {
        benchmark::DoNotOptimize(epl::fit_mle(data));
    }
}
BENCHMARK(BM_FitAircon);

static void BM_OrderStatMomentSeries(benchmark::State& state) {
    const epl::EplParams p(0.1, 0.5);
    const epl::OrderStatSpec spec{10, 20, 2};
    epl::SeriesConfig cfg;
    cfg.max_terms = 100;
    for (auto _ : state) {
        benchmark::DoNotOptimize(epl::order_stat_moment(
            spec, p, epl::SeriesTruncation::fixed_cap, cfg));
    }
}
BENCHMARK(BM_OrderStatMomentSeries);

static void BM_KsExactPValue(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(epl::ks_exact_sf(n, 0.129));
    }
}
BENCHMARK(BM_KsExactPValue)->Arg(30)->Arg(140);

BENCHMARK_MAIN();
