// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <vector>

#include "triquad/kernels.hpp"

using namespace triquad;
using namespace triquad::kernels;

namespace {

const std::vector<i64> kCoeffs{1, 4, 5};
const Mat3 kForm{{{3, 1, 0}, {1, 3, 0}, {0, 0, 6}}};

void BM_SieveSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(triangular_sieve_serial(kCoeffs, st.range(0)));
}
void BM_SieveParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(triangular_sieve_parallel(kCoeffs, st.range(0)));
}
void BM_FormValuesSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(form_values_serial(kForm, st.range(0)));
}
void BM_FormValuesParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(form_values_parallel(kForm, st.range(0)));
}
void BM_ResidueScanSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(residue_scan_serial(kForm, st.range(0), 1));
}
void BM_ResidueScanParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(residue_scan_parallel(kForm, st.range(0), 1));
}

}  // namespace

BENCHMARK(BM_SieveSerial)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SieveParallel)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FormValuesSerial)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FormValuesParallel)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResidueScanSerial)->Arg(28)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResidueScanParallel)->Arg(28)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
