// Microbenchmarks for the numerical kernels the measures are built from,
// ordered roughly by call frequency in a sweep: special functions (called
// per density evaluation), quadrature (per measure), and the assembled
// measures and transforms (per table row).

#include <benchmark/benchmark.h>

#include <cmath>

#include "frc/density.hpp"
#include "frc/escort.hpp"
#include "frc/measures.hpp"
#include "frc/quadrature.hpp"
#include "frc/quantum.hpp"
#include "frc/specfun.hpp"
#include "frc/stam.hpp"

namespace {

void BM_IncBeta(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(frc::inc_beta(0.5, -1.3, x));
        x = x < 0.9 ? x + 1e-4 : 0.1;  // sweep to defeat value caching
    }
}
BENCHMARK(BM_IncBeta);

void BM_InvIncBeta(benchmark::State& state) {
    double y = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(frc::inv_inc_beta(0.5, -1.3, y));
        y = y < 3.0 ? y + 1e-3 : 0.05;
    }
}
BENCHMARK(BM_InvIncBeta);

void BM_InvIncGammaGrow(benchmark::State& state) {
    double y = 0.05;
    for (auto _ : state) {
        benchmark::DoNotOptimize(frc::inv_inc_gamma_grow(1.7, y));
        y = y < 40.0 ? y + 1e-2 : 0.05;
    }
}
BENCHMARK(BM_InvIncGammaGrow);

void BM_Integrate(benchmark::State& state) {
    const frc::DensityModel rho = frc::gaussian(0.0, 1.0);
    const frc::Interval line{-std::numeric_limits<double>::infinity(),
                             std::numeric_limits<double>::infinity()};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            frc::integrate([&](double x) { return rho.pdf(x) * x * x; },
                           line, 1e-10, 1e-12)
                .value);
    }
}
BENCHMARK(BM_Integrate);

void BM_PblGaussianBuild(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(frc::pbl_gaussian(2.0, 0.8, 7.0));
}
BENCHMARK(BM_PblGaussianBuild);

void BM_PblGaussianPdf(benchmark::State& state) {
    const frc::DensityModel rho = frc::pbl_gaussian(2.0, 0.8, 7.0);
    double x = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rho.pdf(x));
        x = x < 2.0 ? x + 1e-4 : -2.0;
    }
}
BENCHMARK(BM_PblGaussianPdf);

void BM_QuantumPdf(benchmark::State& state) {
    const frc::DensityModel rho = frc::radial_density(frc::quantum_state(
        frc::QuantumSystem::hydrogenic, frc::QuantumSpace::momentum, 4, 1,
        3, 1.0));
    double k = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rho.pdf(k));
        k = k < 4.0 ? k + 1e-4 : 1e-3;
    }
}
BENCHMARK(BM_QuantumPdf);

void BM_SharpBound(benchmark::State& state) {
    double lambda = 0.2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(frc::sharp_bound(2.0, 0.8, lambda).K);
        lambda = lambda < 8.0 ? lambda + 1e-3 : 0.2;
    }
}
BENCHMARK(BM_SharpBound);

void BM_RenyiEntropyPower(benchmark::State& state) {
    const frc::DensityModel rho = frc::gaussian(0.0, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(frc::renyi_entropy_power(rho, 7.0));
}
BENCHMARK(BM_RenyiEntropyPower);

void BM_Complexity(benchmark::State& state) {
    const frc::DensityModel rho = frc::radial_density(frc::quantum_state(
        frc::QuantumSystem::hydrogenic, frc::QuantumSpace::position, 2, 0,
        3, 1.0));
    const auto mp = frc::measure_params(2.0, 1.0, 7.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(frc::complexity(rho, mp));
}
BENCHMARK(BM_Complexity);

void BM_EscortBuild(benchmark::State& state) {
    const frc::DensityModel rho = frc::stretched_gaussian(2.0, 0.8);
    for (auto _ : state) {
        auto [ea, map] = frc::escort_transform(rho, 2.0);
        benchmark::DoNotOptimize(ea.pdf(0.5));
    }
}
BENCHMARK(BM_EscortBuild);

void BM_EscortPdf(benchmark::State& state) {
    const auto [ea, map] =
        frc::escort_transform(frc::stretched_gaussian(2.0, 0.8), 2.0);
    double y = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ea.pdf(y));
        y = y < 1.0 ? y + 1e-4 : -1.0;
    }
}
BENCHMARK(BM_EscortPdf);

}  // namespace

BENCHMARK_MAIN();
