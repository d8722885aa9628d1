#include "factorlab/corpus.hpp"

#include <benchmark/benchmark.h>

using namespace factorlab;

namespace {

void quaternion_h2(benchmark::State& state)
{
    const auto F = quaternion_base<Rational>();
    for (auto _ : state)
        benchmark::DoNotOptimize(cohomology_dim(F, 2).cohomology);
}
BENCHMARK(quaternion_h2)->Unit(benchmark::kMillisecond);

void quantum_plane_check_order(benchmark::State& state)
{
    const unsigned degree = unsigned(state.range(0));
    for (auto _ : state) {
        // fresh data each round so memo tables start empty
        const auto def = quantum_plane<QRational>(QRational::q(), 4);
        benchmark::DoNotOptimize(check_order(def, 4, degree).pass);
    }
}
BENCHMARK(quantum_plane_check_order)->Arg(3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void plane_obstruction(benchmark::State& state)
{
    const unsigned degree = unsigned(state.range(0));
    for (auto _ : state) {
        const auto def = commutative_plane<Rational>(Rational(0), 1);
        benchmark::DoNotOptimize(obstruction(def, 2, degree).agreement.pass);
    }
}
BENCHMARK(plane_obstruction)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void plane_extension(benchmark::State& state)
{
    const unsigned in = unsigned(state.range(0));
    for (auto _ : state) {
        const auto def = commutative_plane<Rational>(Rational(0), 1);
        benchmark::DoNotOptimize(extend_order(def, 2, Caps{in, in + 2}).status);
    }
}
BENCHMARK(plane_extension)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void heisenberg_square_zero(benchmark::State& state)
{
    const auto F = heisenberg_base<Rational>();
    const auto f = delta_cochain<Rational>({1, 1}, {Monomial{1}, Monomial{1}}, {Monomial{0}, Monomial{0}});
    for (auto _ : state)
        benchmark::DoNotOptimize(vanishes_on(F, d_A(F, d_B(F, f)) - d_B(F, d_A(F, f)), unsigned(state.range(0))).pass);
}
BENCHMARK(heisenberg_square_zero)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
