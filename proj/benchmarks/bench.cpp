#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "aremos/artime.hpp"
#include "aremos/emos.hpp"
#include "aremos/pooling.hpp"

namespace {

aremos::ErrorSeries make_ar1_series(std::size_t n, double alpha, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    aremos::ErrorSeries series;
    series.values.reserve(n);
    double z = 0.0;
    for (std::size_t t = 0; t < n + 100; ++t) {
        z = alpha * z + noise(rng);
        if (t >= 100) {
            series.values.push_back(z);
        }
    }
    return series;
}

void BM_gaussian_crps(benchmark::State& state) {
    const aremos::GaussianPredictive dist{1.3, 2.1};
    double y = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aremos::gaussian_crps(dist, y));
        y += 1e-6;
    }
}
BENCHMARK(BM_gaussian_crps);

void BM_slp_crps(benchmark::State& state) {
    const aremos::SlpMixture mix{{{0.5, -1.0, 1.0}, {0.5, 1.5, 2.0}}, 0.9};
    double y = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(aremos::slp_crps(mix, y));
        y += 1e-6;
    }
}
BENCHMARK(BM_slp_crps);

void BM_yule_walker(benchmark::State& state) {
    const auto series = make_ar1_series(90, 0.8, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(aremos::fit_yule_walker(series, 3));
    }
}
BENCHMARK(BM_yule_walker);

void BM_select_order(benchmark::State& state) {
    const auto series = make_ar1_series(90, 0.8, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(aremos::select_order_aic(series, 9));
    }
}
BENCHMARK(BM_select_order);

void BM_fit_emos(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<aremos::EnsembleForecast> ensembles(25);
    std::vector<aremos::TrainingCase> window;
    for (std::size_t t = 0; t < ensembles.size(); ++t) {
        ensembles[t].members.resize(50);
        const double base = 10.0 * noise(rng);
        for (auto& x : ensembles[t].members) {
            x = base + 0.5 * noise(rng);
        }
        window.push_back({&ensembles[t], base + noise(rng)});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(aremos::fit_emos(window));
    }
}
BENCHMARK(BM_fit_emos);

}  // namespace

BENCHMARK_MAIN();
