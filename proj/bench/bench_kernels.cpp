#include <benchmark/benchmark.h>

#include "pacorr/autocorr.hpp"
#include "pacorr/evenseq.hpp"
#include "pacorr/oracles.hpp"
#include "pacorr/sequence.hpp"

namespace {

pacorr::BinarySequence make(std::size_t m) {
    pacorr::RngStream stream(42, m);
    return pacorr::sample_uniform(m, stream);
}

void BM_SpectrumNaive(benchmark::State& state) {
    const auto s = make(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pacorr::reference::full_spectrum(s));
}

void BM_SpectrumSerial(benchmark::State& state) {
    const auto s = make(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pacorr::full_spectrum(s, pacorr::Exec::serial));
}

void BM_SpectrumParallel(benchmark::State& state) {
    const auto s = make(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pacorr::full_spectrum(s, pacorr::Exec::parallel));
}

void BM_TruncatedSpectrum(benchmark::State& state) {
    const auto s = make(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pacorr::truncated_spectrum(s));
}

void BM_ExactPmfMax(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pacorr::enumerate_pmf_max(m));
}

void BM_CountXiEvenDp(benchmark::State& state) {
    const auto xi = pacorr::XiSequence::make(static_cast<std::size_t>(state.range(0)), {1, 1, 2, 2, 1, 1, 2, 2});
    for (auto _ : state) benchmark::DoNotOptimize(pacorr::count_xi_even_parity_dp(xi));
}

}  // namespace

BENCHMARK(BM_SpectrumNaive)->Arg(499)->Arg(2003)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SpectrumSerial)->Arg(499)->Arg(2003)->Arg(10007)->Arg(100003)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SpectrumParallel)->Arg(10007)->Arg(100003)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_TruncatedSpectrum)->Arg(10007)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ExactPmfMax)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountXiEvenDp)->Arg(13)->Arg(19)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
