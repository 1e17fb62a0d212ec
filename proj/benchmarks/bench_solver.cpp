#include "support.hpp"

#include "cpat/solver.hpp"

#include <benchmark/benchmark.h>

using namespace cpat;

namespace {

void BM_SolveEuclidean(benchmark::State& state)
{
    const auto t = testing::load_triangulation("triangular_bipyramid");
    const auto a = testing::load_theta(t, "bipyramid_obtuse");
    for (auto _ : state) benchmark::DoNotOptimize(solve_euclidean(t, a, std::nullopt));
}
BENCHMARK(BM_SolveEuclidean)->Unit(benchmark::kMicrosecond);

void BM_SolveEuclideanIcosahedron(benchmark::State& state)
{
    const auto t = testing::load_triangulation("icosahedron");
    const auto a = AngleAssignment::constant(t, 0.3);
    for (auto _ : state) benchmark::DoNotOptimize(solve_euclidean(t, a, 0));
}
BENCHMARK(BM_SolveEuclideanIcosahedron)->Unit(benchmark::kMicrosecond);

void BM_SolveSpherical(benchmark::State& state)
{
    const auto t = testing::load_triangulation(state.range(0) ? "icosahedron" : "octahedron");
    const auto a = testing::load_theta(t, state.range(0) ? "icosahedron_2pi5" : "octahedron_pi3");
    for (auto _ : state) benchmark::DoNotOptimize(solve_spherical(t, a));
}
BENCHMARK(BM_SolveSpherical)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
