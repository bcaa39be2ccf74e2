// Microbenchmarks for the hot paths: simulation, the closed-form local fit,
// one cross-validation pass, and the simplex QML fit it replaces.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "tvarch/bandwidth.hpp"
#include "tvarch/estimator.hpp"
#include "tvarch/forecast.hpp"
#include "tvarch/model.hpp"
#include "tvarch/qml.hpp"
#include "tvarch/simulate.hpp"

namespace {

using namespace tvarch;

ReturnSeries make_series(std::size_t n) {
    return simulate_tvarch(ParamCurves::constant_variance_example(),
                           InnovationDist::gaussian(), n, 42);
}

void bm_simulate(benchmark::State& state) {
    const auto model = ParamCurves::constant_variance_example();
    const auto dist = InnovationDist::gaussian();
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_tvarch(model, dist, n, 42));
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n));
}
BENCHMARK(bm_simulate)->Arg(1024)->Arg(8192);

void bm_local_fit(benchmark::State& state) {
    const ReturnSeries x = make_series(static_cast<std::size_t>(state.range(0)));
    const Kernel kernel = Kernel::parzen();
    for (auto _ : state) {
        benchmark::DoNotOptimize(nls_fit_at(x, x.size() / 2, 0.2, kernel, 1));
    }
}
BENCHMARK(bm_local_fit)->Arg(1024)->Arg(8192);

void bm_qml_fit(benchmark::State& state) {
    const ReturnSeries x = make_series(250);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qml_fit_segment(x, 1));
    }
}
BENCHMARK(bm_qml_fit);

void bm_cv_pass(benchmark::State& state) {
    const ReturnSeries x = make_series(1024);
    const Kernel kernel = Kernel::parzen();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cv_criterion(x, 0.15, 10, kernel, 1));
    }
}
BENCHMARK(bm_cv_pass);

void bm_span_forecast(benchmark::State& state) {
    const ReturnSeries x = make_series(2048);
    for (auto _ : state) {
        const std::vector<double> a = span_fit(x, 1500, 250, 1);
        benchmark::DoNotOptimize(
            h_step_forecast(a, {x.at(1500) * x.at(1500)}, 250));
    }
}
BENCHMARK(bm_span_forecast);

}  // namespace

BENCHMARK_MAIN();
