// Serial reference vs OpenMP for each data-parallel kernel.
// Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "haarshift/haar_operator.hpp"
#include "haarshift/reconstruct.hpp"
#include "haarshift/solver.hpp"

using namespace haarshift;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::serial : Execution::parallel; }

void BM_ShiftSweep(benchmark::State& state) {
    const ShiftOperator op(0x1.0p-9);
    std::vector<double> in(1 << 20);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = std::sin(1e-4 * static_cast<double>(i));
    std::vector<double> out(in.size());
    for (auto _ : state) {
        op.apply(in, 0.0, 0.0, out, mode(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(in.size()));
}
BENCHMARK(BM_ShiftSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MinModulus(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(min_modulus_scan(-1e3, 1e3, 1e-2, mode(state)));
}
BENCHMARK(BM_MinModulus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_McEstimate(benchmark::State& state) {
    const auto table = constant_table(-8.0 / 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(mc_estimate(table, 1.1, 0.1, 100000, 1e-4, 1, mode(state)).mean);
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_McEstimate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ApplyAveraged(benchmark::State& state) {
    const auto table = constant_table(-8.0 / 3.0);
    const std::vector<double> xs{2.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            apply_averaged(table, indicator_test_function(), xs, 100000, 1e-4, 1, mode(state)).front().mean);
    }
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_ApplyAveraged)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
