// OpenMP kernels against their serial references. With one core the pairs should tie.

#include <benchmark/benchmark.h>

#include "bloch/band.hpp"
#include "bloch/sweep.hpp"

using namespace bloch;

namespace {

const SymbolMatrix& mother_symbol()
{
    static const SymbolMatrix s = build_symbol(mother_graph());
    return s;
}

const DispersionSystem& mother_system()
{
    static const DispersionSystem sys = build_system(mother_symbol());
    return sys;
}

template <bool Parallel>
void bands(benchmark::State& state)
{
    const std::vector<double> alpha{1, 2, 3, 4, 5, 6, 7, 8, 1};
    const BandModel m(mother_symbol(), alpha);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto g = Parallel ? eval_bands(m, n) : eval_bands_serial(m, n);
        benchmark::DoNotOptimize(g.lower.data());
    }
    state.SetItemsProcessed(state.iterations() * n * n);
}

template <bool Parallel>
void sampling(benchmark::State& state)
{
    TestOptions opt;
    opt.policy = FieldPolicy::prime;
    const auto trials = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto s = Parallel ? sample_test(mother_system(), trials, 7, {1, 50}, opt)
                          : sample_test_serial(mother_system(), trials, 7, {1, 50}, opt);
        benchmark::DoNotOptimize(s.certified);
    }
}

template <bool Parallel>
void census(benchmark::State& state)
{
    SweepOptions opt;
    opt.trials = 3;
    const auto g = graphene_graph();
    for (auto _ : state) {
        auto r = Parallel ? run_sweep(g, opt) : run_sweep_serial(g, opt);
        benchmark::DoNotOptimize(r.dsg.data());
    }
}

}  // namespace

BENCHMARK(bands<true>)->Name("eval_bands/openmp")->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(bands<false>)->Name("eval_bands/serial")->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(sampling<true>)->Name("sample_test/openmp")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(sampling<false>)->Name("sample_test/serial")->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(census<true>)->Name("sweep_graphene/openmp")->Unit(benchmark::kMillisecond);
BENCHMARK(census<false>)->Name("sweep_graphene/serial")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
