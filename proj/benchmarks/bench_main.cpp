#include <benchmark/benchmark.h>

#include <cmforge/classpoly.hpp>
#include <cmforge/modforms.hpp>
#include <cmforge/qseries.hpp>
#include <cmforge/quadratic.hpp>
#include <cmforge/transform.hpp>

using namespace cmforge;

static void BM_JValue(benchmark::State& state)
{
    const auto prec = static_cast<numerics::Bits>(state.range(0));
    const auto tau = quadratic::form_to_tau({2, 1, 3}, prec);
    for (auto _ : state)
        benchmark::DoNotOptimize(modforms::j_value(tau, prec));
}
BENCHMARK(BM_JValue)->Arg(128)->Arg(512)->Arg(2048);

static void BM_EtaValue(benchmark::State& state)
{
    const auto prec = static_cast<numerics::Bits>(state.range(0));
    const auto tau = quadratic::form_to_tau({1, 1, 6}, prec);
    for (auto _ : state)
        benchmark::DoNotOptimize(modforms::eta_value(tau, prec));
}
BENCHMARK(BM_EtaValue)->Arg(128)->Arg(512);

// Uncached: a fixed precision bypasses the memo table.
static void BM_ClassPolynomial(benchmark::State& state)
{
    const long D = -state.range(0);
    classpoly::Options opts;
    opts.precision = classpoly::required_precision(D);
    for (auto _ : state)
        benchmark::DoNotOptimize(classpoly::class_polynomial(D, opts));
    state.counters["h"] = static_cast<double>(quadratic::class_number(D));
}
BENCHMARK(BM_ClassPolynomial)->Arg(23)->Arg(71)->Arg(199)->Arg(399)->Unit(benchmark::kMillisecond);

static void BM_ReducedForms(benchmark::State& state)
{
    const long D = -state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(quadratic::ClassGroup(D));
}
BENCHMARK(BM_ReducedForms)->Arg(399)->Arg(4004)->Unit(benchmark::kMicrosecond);

// A non-default budget bypasses the memo table.
static void BM_ModularPolynomial(benchmark::State& state)
{
    const long s = state.range(0);
    const long budget = transform::default_budget(s) + 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(transform::modular_polynomial_J(s, budget));
}
BENCHMARK(BM_ModularPolynomial)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_DeltaSeries(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(qseries::delta_series(state.range(0)));
}
BENCHMARK(BM_DeltaSeries)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
