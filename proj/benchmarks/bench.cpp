#include <benchmark/benchmark.h>

#include <cmath>

#include "edtail/field_eval.hpp"
#include "edtail/self_force.hpp"
#include "edtail/worldline.hpp"

using namespace edtail;

static void BM_RetardedTime(benchmark::State& state) {
    HyperbolicWorldline w(1.0, true);
    const MVec3 x{2.0, 1.3, 0.4};
    for (auto _ : state)
        benchmark::DoNotOptimize(retarded_time(w, x).tau);
}
BENCHMARK(BM_RetardedTime);

static void BM_FieldStatic(benchmark::State& state) {
    StaticWorldline w;
    const FieldQuery q{{3.0, 0.4, 0.3}, 1.0, Direction::Retarded, 1e-9};
    for (auto _ : state)
        benchmark::DoNotOptimize(field(w, q).e1);
}
BENCHMARK(BM_FieldStatic);

static void BM_FieldHyperbolic(benchmark::State& state) {
    HyperbolicWorldline w(1.0, true);
    const FieldQuery q{{2.0, 1.6, 0.2}, 1.0, Direction::Retarded, 1e-9};
    for (auto _ : state)
        benchmark::DoNotOptimize(field(w, q).e1);
}
BENCHMARK(BM_FieldHyperbolic);

static void BM_SelfForce(benchmark::State& state) {
    HyperbolicWorldline w(1.0);
    const PrehistoryPolicy pol = PrehistoryPolicy::truncate_at(0.0);
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(self_force(w, 2.0, 1.0, pol, tol).force.t);
}
BENCHMARK(BM_SelfForce)->Arg(6)->Arg(8)->Arg(10);

static void BM_SeparationShortGap(benchmark::State& state) {
    HyperbolicWorldline w(1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(separation(w, 2.0, 2.0 - 1e-4).norm);
}
BENCHMARK(BM_SeparationShortGap);

BENCHMARK_MAIN();
