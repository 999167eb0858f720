// Serial, OpenMP and reference implementations of the hot kernels side by side.

#include "gwseries/correspond.hpp"
#include "gwseries/transforms.hpp"
#include "support/generators.hpp"

#include <benchmark/benchmark.h>

using namespace gwseries;

namespace {

struct MulInputs {
    NovikovSeries a, b;
};

MulInputs mul_inputs(int degree_cap) {
    gen::Rng rng(1);
    return {gen::random_novikov(rng, preset_f1(), degree_cap, 4, 60, false),
            gen::random_novikov(rng, preset_f1(), degree_cap, 4, 60, false)};
}

void BM_nv_mul_parallel(benchmark::State& state) {
    const auto in = mul_inputs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(nv_mul(in.a, in.b, Exec::parallel));
    }
}

void BM_nv_mul_serial(benchmark::State& state) {
    const auto in = mul_inputs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(nv_mul(in.a, in.b, Exec::serial));
    }
}

void BM_nv_mul_reference(benchmark::State& state) {
    const auto in = mul_inputs(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::nv_mul(in.a, in.b));
    }
}

const Dataset& forward_data() {
    static const Dataset data = gen::forward_dataset(7, preset_f1(), 2, 6, {true, false, false});
    return data;
}

void stationary_all(const Lookup& lk, const DeltaOptions& opts, bool ref) {
    for (const auto& beta : enumerate_effective_upto(preset_f1(), 6)) {
        if (!beta.is_zero()) {
            benchmark::DoNotOptimize(ref ? reference::stationary_sum(beta, 2, lk) : stationary_sum(beta, 2, lk, opts));
        }
    }
}

void BM_stationary_sum_parallel(benchmark::State& state) {
    const auto lk = forward_data().lookup();
    for (auto _ : state) {
        stationary_all(lk, {}, false);
    }
}

void BM_stationary_sum_serial(benchmark::State& state) {
    const auto lk = forward_data().lookup();
    DeltaOptions opts;
    opts.exec = Exec::serial;
    for (auto _ : state) {
        stationary_all(lk, opts, false);
    }
}

void BM_stationary_sum_reference(benchmark::State& state) {
    const auto lk = forward_data().lookup();
    for (auto _ : state) {
        stationary_all(lk, {}, true);
    }
}

void BM_check_main(benchmark::State& state) {
    CheckOptions opts;
    opts.exec = state.range(0) ? Exec::parallel : Exec::serial;
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_theorem_main(forward_data(), opts));
    }
}

} // namespace

BENCHMARK(BM_nv_mul_parallel)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nv_mul_serial)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nv_mul_reference)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stationary_sum_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stationary_sum_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stationary_sum_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_check_main)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
