#include <benchmark/benchmark.h>

#include "mft/dse.hpp"
#include "mft/enumeration.hpp"
#include "mft/hopf.hpp"

#include <random>

using namespace mft;

namespace {

void BM_Enumerate2pt(benchmark::State& state) {
    EnumKey key{2, static_cast<int>(state.range(0)), EnumFilter::OnePI};
    for (auto _ : state) {
        auto graphs = enumerateGraphs(key);
        benchmark::DoNotOptimize(graphs.size());
    }
}
BENCHMARK(BM_Enumerate2pt)->Arg(2)->Arg(3)->Arg(4);

void BM_Enumerate4pt(benchmark::State& state) {
    EnumKey key{4, static_cast<int>(state.range(0)), EnumFilter::Connected};
    for (auto _ : state) {
        auto graphs = enumerateGraphs(key);
        benchmark::DoNotOptimize(graphs.size());
    }
}
BENCHMARK(BM_Enumerate4pt)->Arg(2)->Arg(3);

void BM_CanonicalRooted(benchmark::State& state) {
    auto graphs = enumerateGraphs({2, 3, EnumFilter::OnePI});
    std::mt19937 rng(5);
    std::vector<std::pair<RibbonGraph, int>> shuffled;
    for (const auto& g : graphs) {
        auto dom = halfEdges(g);
        std::vector<int> img = dom;
        std::shuffle(img.begin(), img.end(), rng);
        std::map<int, int> f;
        for (std::size_t i = 0; i < dom.size(); ++i) f[dom[i]] = img[i];
        std::map<int, int> sig, alp;
        for (int x : dom) {
            sig[f[x]] = f[g.sigma.apply(x)];
            alp[f[x]] = f[g.alpha.apply(x)];
        }
        shuffled.emplace_back(
            RibbonGraph{Permutation::fromMap(std::move(sig)), Permutation::fromMap(std::move(alp))},
            f[1]);
    }
    for (auto _ : state) {
        for (const auto& [g, root] : shuffled)
            benchmark::DoNotOptimize(canonicalRooted(g, root));
    }
}
BENCHMARK(BM_CanonicalRooted);

void BM_AdmissibleSubgraphs(benchmark::State& state) {
    auto graphs = enumerateGraphs({4, 3, EnumFilter::OnePI});
    for (auto _ : state) {
        std::size_t total = 0;
        for (const auto& g : graphs) total += admissibleSubgraphs(g).size();
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_AdmissibleSubgraphs);

void BM_GraftFishExample(benchmark::State& state) {
    RibbonGraph fish =
        parseGraph("H=8; sigma=(1 4 3 2)(5 8 7 6); alpha=(3 5)(4 8); ext=1,2,6,7");
    GraphPoly arg =
        GraphPoly::fromMonomial(vertexMonomial(1) * generatorMonomial(serialize(fish)));
    for (auto _ : state) benchmark::DoNotOptimize(graftPoly(fish, arg));
}
BENCHMARK(BM_GraftFishExample);

void BM_DseSolveOrder3(benchmark::State& state) {
    for (auto _ : state) {
        DseSolution sol = dseSolve(3, 2);
        benchmark::DoNotOptimize(sol.allMatch());
    }
}
BENCHMARK(BM_DseSolveOrder3);

} // namespace

BENCHMARK_MAIN();
