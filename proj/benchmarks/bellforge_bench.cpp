#include "bellforge/catalog.hpp"
#include "bellforge/equivalence.hpp"
#include "bellforge/polytope.hpp"
#include "bellforge/quantum.hpp"

#include <benchmark/benchmark.h>

using namespace bellforge;

static void BM_LrBoundWzg8(benchmark::State& state) {
    const auto ineq = catalog_get("wzg8").inequality;
    for (auto _ : state) benchmark::DoNotOptimize(lr_bound(ineq));
}
BENCHMARK(BM_LrBoundWzg8);

static void BM_TightnessWzg6(benchmark::State& state) {
    const auto ineq = catalog_get("wzg6").inequality;
    for (auto _ : state) benchmark::DoNotOptimize(tightness(ineq).rank);
}
BENCHMARK(BM_TightnessWzg6);

static void BM_VertexStream(benchmark::State& state) {
    const Scenario s(std::vector<int>(static_cast<std::size_t>(state.range(0)), 2));
    for (auto _ : state) {
        unsigned long long count = 0;
        for (const Vertex& v : enumerate_vertices(s, true)) count += static_cast<unsigned>(v.outcome(0, 0));
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_VertexStream)->Arg(6)->Arg(8);

static void BM_CanonicalWzg8(benchmark::State& state) {
    const auto ineq = catalog_get("wzg8").inequality;
    for (auto _ : state) benchmark::DoNotOptimize(canonical_form(ineq).term_count());
}
BENCHMARK(BM_CanonicalWzg8);

static void BM_CanonicalI44(benchmark::State& state) {
    const auto ineq = catalog_get("i44").inequality;
    for (auto _ : state) benchmark::DoNotOptimize(canonical_form(ineq).term_count());
}
BENCHMARK(BM_CanonicalI44);

static void BM_OptimizeChsh(benchmark::State& state) {
    const auto ineq = catalog_get("chsh").inequality;
    OptimizeOptions options;
    options.restarts = 8;
    for (auto _ : state) benchmark::DoNotOptimize(maximize_ghz_violation(ineq, options).quantum_value);
}
BENCHMARK(BM_OptimizeChsh);

static void BM_FacetEnumeration22(benchmark::State& state) {
    const Scenario s({2, 2});
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_facets(s).facets.size());
}
BENCHMARK(BM_FacetEnumeration22);

BENCHMARK_MAIN();
