// Parallel kernels against their serial references.
#include <random>

#include <benchmark/benchmark.h>

#include "ccp/instance.hpp"
#include "ccp/oracle.hpp"
#include "ccp/pls.hpp"

using namespace ccp;

namespace {

// d colors of d points; the last point of each color is chosen so the color embraces b.
CcpInstance make_instance(std::size_t d, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-20, 20), coef(1, 3);
    CcpInstance inst;
    inst.dim = d;
    inst.b = Vector(d, Rational(0));
    for (auto& x : inst.b) x = coord(rng);
    inst.b[0] = 7;
    for (std::size_t i = 0; i < d; ++i) {
        PointSet C;
        Vector last = Rational(coef(rng)) * inst.b;
        for (std::size_t j = 0; j + 1 < d; ++j) {
            Vector p(d, Rational(0));
            for (auto& x : p) x = coord(rng);
            last = last - Rational(coef(rng)) * p;
            C.push_back(p);
        }
        C.push_back(last);
        inst.colors.push_back(C);
    }
    return inst;
}

void BM_P2(benchmark::State& st)
{
    auto inst = make_instance(static_cast<std::size_t>(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(verify_P2(inst));
}

void BM_P2_serial(benchmark::State& st)
{
    auto inst = make_instance(static_cast<std::size_t>(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(verify_P2_serial(inst));
}

void BM_enumerate(benchmark::State& st)
{
    auto inst = make_instance(static_cast<std::size_t>(st.range(0)), 2);
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_colorful_solutions(inst));
}

void BM_enumerate_serial(benchmark::State& st)
{
    auto inst = make_instance(static_cast<std::size_t>(st.range(0)), 2);
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_colorful_solutions_serial(inst));
}

void BM_neighbor(benchmark::State& st)
{
    auto inst = make_instance(static_cast<std::size_t>(st.range(0)), 3);
    PlsState s{std::vector<std::size_t>(inst.dim, 0), 0};
    s.potential = potential_of(inst, s.choice);
    PlsOptions o;
    o.best_improvement = true;
    for (auto _ : st) benchmark::DoNotOptimize(improving_neighbor(inst, s, o));
}

void BM_neighbor_serial(benchmark::State& st)
{
    auto inst = make_instance(static_cast<std::size_t>(st.range(0)), 3);
    PlsState s{std::vector<std::size_t>(inst.dim, 0), 0};
    s.potential = potential_of(inst, s.choice);
    for (auto _ : st) benchmark::DoNotOptimize(improving_neighbor_serial(inst, s, true));
}

}  // namespace

BENCHMARK(BM_P2)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_P2_serial)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_serial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_neighbor)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_neighbor_serial)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
