#include "eqcs/abelian_oracle.hpp"
#include "eqcs/cschar.hpp"
#include "eqcs/fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace eqcs;

static void BM_PWedge(benchmark::State& state)
{
    const Grid g = Grid::torus(2, static_cast<int>(state.range(0)));
    Rng rng(1);
    const auto a = random_connection(rng, GroupId::SU2, 2, 3, 0.5).sample(g);
    const auto b = random_connection(rng, GroupId::SU2, 2, 3, 0.5).sample(g);
    const auto p = CharacteristicPair::su2(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate(p_wedge(p, a, b)));
    state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_PWedge)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void BM_CsAction(benchmark::State& state)
{
    const Grid g = Grid::torus(3, static_cast<int>(state.range(0)));
    const Connection A = su2_t3_fixture();
    const auto p = CharacteristicPair::su2(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(cs_action(A, p, g).value());
}
BENCHMARK(BM_CsAction)->Arg(12)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_Xi(benchmark::State& state)
{
    const auto f = su2_battery(1).front();
    XiOptions o;
    o.n_space = static_cast<int>(state.range(0));
    const auto p = CharacteristicPair::su2(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(xi(f.phi, f.gamma, p, o).value.value());
}
BENCHMARK(BM_Xi)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_LatticeXi(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    Rng rng(2);
    const LatticePath path = random_lattice_path(rng, n, 8, {1, 0});
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_xi_u1(path, 1).value());
}
BENCHMARK(BM_LatticeXi)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
