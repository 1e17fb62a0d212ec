#include "cpat/kernel.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cpat;

namespace {

std::vector<TripleSpec> feasible_triples(Mode m, int n)
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ur(0.05, 1.5);
    std::uniform_real_distribution<double> ut(0.0, 3.0);
    std::vector<TripleSpec> out;
    while (static_cast<int>(out.size()) < n) {
        const TripleSpec s{m, {ur(rng), ur(rng), ur(rng)}, {ut(rng), ut(rng), ut(rng)}};
        if (feasibility(s).feasible) out.push_back(s);
    }
    return out;
}

void BM_InnerAngles(benchmark::State& state)
{
    const auto specs = feasible_triples(state.range(0) ? Mode::Spherical : Mode::Euclidean, 1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(inner_angles(specs[i++ & 1023]));
    }
}
BENCHMARK(BM_InnerAngles)->Arg(0)->Arg(1);

void BM_PlaceTriple(benchmark::State& state)
{
    const auto specs = feasible_triples(state.range(0) ? Mode::Spherical : Mode::Euclidean, 1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(place_triple(specs[i++ & 1023]));
    }
}
BENCHMARK(BM_PlaceTriple)->Arg(0)->Arg(1);

}  // namespace
