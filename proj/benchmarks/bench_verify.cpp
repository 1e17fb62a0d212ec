#include "support.hpp"

#include "cpat/polyhedron.hpp"
#include "cpat/verify.hpp"

#include <benchmark/benchmark.h>

using namespace cpat;

namespace {

void BM_VerifyPlanar(benchmark::State& state)
{
    const auto t = testing::load_triangulation("tetrahedron");
    const auto a = testing::load_theta(t, "tetrahedron_pi4");
    const auto p = CirclePattern::euclidean(t, a, solve_euclidean(t, a, 0).config);
    VerifyOptions o;
    o.boundary_samples = static_cast<int>(state.range(0));
    o.grid = static_cast<int>(state.range(0)) / 16;
    for (auto _ : state) benchmark::DoNotOptimize(verify_pattern(p, o));
}
BENCHMARK(BM_VerifyPlanar)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_VerifySpherical(benchmark::State& state)
{
    const auto t = testing::load_triangulation("icosahedron");
    const auto a = testing::load_theta(t, "icosahedron_2pi5");
    const auto p = CirclePattern::spherical(t, a, solve_spherical(t, a).config);
    for (auto _ : state) benchmark::DoNotOptimize(verify_pattern(p));
}
BENCHMARK(BM_VerifySpherical)->Unit(benchmark::kMillisecond);

void BM_BuildPolyhedron(benchmark::State& state)
{
    const auto t = testing::load_triangulation("icosahedron");
    const auto a = testing::load_theta(t, "icosahedron_2pi5");
    const auto cfg = solve_spherical(t, a).config;
    for (auto _ : state) benchmark::DoNotOptimize(build_polyhedron(t, cfg));
}
BENCHMARK(BM_BuildPolyhedron)->Unit(benchmark::kMicrosecond);

}  // namespace
