#include "bellpoly/classical.hpp"
#include "bellpoly/polytope.hpp"
#include "bellpoly/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace bellpoly;

void BM_HullSz(benchmark::State& state) {
    const auto v = enumerate_vertices(sz_scenario());
    for (auto _ : state) {
        benchmark::DoNotOptimize(dd_hull(v));
    }
}
BENCHMARK(BM_HullSz);

void BM_HullChsh(benchmark::State& state) {
    const auto v = enumerate_vertices(chsh_scenario());
    for (auto _ : state) {
        benchmark::DoNotOptimize(dd_hull(v));
    }
}
BENCHMARK(BM_HullChsh);

// Pairwise scenario on n observables with every pair as a monomial.
void BM_HullComplete(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<Monomial> pairs;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            pairs.push_back({i, j});
        }
    }
    const auto v = enumerate_vertices(Scenario(n, pairs));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dd_hull(v));
    }
}
BENCHMARK(BM_HullComplete)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Eigh(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    ComplexMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    a = (a + a.adjoint()).eval();
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigh(a));
    }
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(16)->Arg(64);

void BM_SzSpectrum(benchmark::State& state) {
    double theta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sz_spectrum(theta));
        theta += 1e-3;
    }
}
BENCHMARK(BM_SzSpectrum);

void BM_OptimizeChsh(benchmark::State& state) {
    const Facet facet{Rational(2), {1, 1, 1, -1}};
    const auto scenario = chsh_scenario();
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize_angles(facet, scenario));
    }
}
BENCHMARK(BM_OptimizeChsh)->Unit(benchmark::kSecond)->Iterations(1);

void BM_SampleUrn(benchmark::State& state) {
    const auto urn = UrnDistribution::uniform(3);
    const auto scenario = sz_scenario();
    SplitMix64 rng(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_urn(urn, scenario, 100000, rng));
    }
}
BENCHMARK(BM_SampleUrn)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
