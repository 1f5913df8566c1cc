// Serial reference against the OpenMP kernels on the workloads the library runs.

#include "pointctl/kernels.hpp"
#include "pointctl/special_functions.hpp"
#include "pointctl/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace pointctl;

namespace {

// No hit exists for an irrational target, so the whole triangle is scanned.
template <auto Scan>
void BM_ratio_scan(benchmark::State& state) {
    const std::vector<double> z = bessel_zeros(BesselOrder(0.0), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Scan(z, 4.0 / 3.0, 0.70710678118654752, 1e-12));
    }
}

template <auto Tabulate>
void BM_tabulate_modes(benchmark::State& state) {
    const SpectralBasis basis(0.5, 1.0 / 16.0, 50);
    std::vector<double> xs;
    const int n = static_cast<int>(state.range(0));
    for (int i = 1; i <= n; ++i) xs.push_back(static_cast<double>(i) / (n + 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Tabulate([&](int c, double x) { return basis.eigenfunction(c + 1, x); }, 50, xs));
    }
}

template <auto Gram>
void BM_weighted_gram(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Eigen::MatrixXd v = Eigen::MatrixXd::Random(n, 50);
    const std::vector<double> w(static_cast<std::size_t>(n), 1.0 / n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Gram(v, w));
    }
}

}  // namespace

BENCHMARK(BM_ratio_scan<kernels::serial::first_ratio_hit>)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ratio_scan<kernels::parallel::first_ratio_hit>)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tabulate_modes<kernels::serial::tabulate>)->Arg(1001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tabulate_modes<kernels::parallel::tabulate>)->Arg(1001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weighted_gram<kernels::serial::weighted_gram>)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weighted_gram<kernels::parallel::weighted_gram>)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
