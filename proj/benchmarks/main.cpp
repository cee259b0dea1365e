#include <benchmark/benchmark.h>

#include "sievebound/oracle.hpp"
#include "sievebound/quadrature.hpp"

using namespace sievebound;

namespace {

const BuchstabTable& table() {
    static BuchstabTable t = build_table(10.0, 1e-4);
    return t;
}

void BM_TableBuild(benchmark::State& state) {
    for (auto _ : state) {
        BuchstabTable t = build_table(10.0, 1e-3);
        benchmark::DoNotOptimize(t.cell_count());
    }
}
BENCHMARK(BM_TableBuild)->Unit(benchmark::kMillisecond);

void BM_OmegaEval(benchmark::State& state) {
    const auto& t = table();
    double u = 1.0;
    for (auto _ : state) {
        u += 0.001;
        if (u > 9.9) u = 1.0;
        benchmark::DoNotOptimize(t.omega(Enclosure(u)));
    }
}
BENCHMARK(BM_OmegaEval);

void BM_OmegaIntegral(benchmark::State& state) {
    const auto& t = table();
    double v = 1.0;
    for (auto _ : state) {
        v += 0.001;
        if (v > 8.9) v = 1.0;
        benchmark::DoNotOptimize(t.omega_integral(Enclosure(v)));
    }
}
BENCHMARK(BM_OmegaIntegral);

void BM_TermG2Rigorous(benchmark::State& state) {
    QuadratureConfig cfg;
    cfg.target_width = 1e-7;
    for (auto _ : state) {
        TermResult r = compute_term(TermId::G2, cfg, table());
        benchmark::DoNotOptimize(r.value.hi());
    }
}
BENCHMARK(BM_TermG2Rigorous)->Unit(benchmark::kMillisecond);

void BM_TermG6Rigorous(benchmark::State& state) {
    QuadratureConfig cfg;
    cfg.target_width = 1e-5;
    for (auto _ : state) {
        TermResult r = compute_term(TermId::G6, cfg, table());
        benchmark::DoNotOptimize(r.value.lo());
    }
}
BENCHMARK(BM_TermG6Rigorous)->Unit(benchmark::kMillisecond);

void BM_TermG4Rigorous(benchmark::State& state) {
    QuadratureConfig cfg;
    cfg.target_width = 2e-4;
    for (auto _ : state) {
        TermResult r = compute_term(TermId::G4, cfg, table());
        benchmark::DoNotOptimize(r.value.hi());
    }
}
BENCHMARK(BM_TermG4Rigorous)->Unit(benchmark::kMillisecond);

void BM_FastReport2Dim(benchmark::State& state) {
    QuadratureConfig cfg;
    cfg.mode = QuadMode::fast;
    for (auto _ : state) {
        TermResult r = compute_term(TermId::G2, cfg, table());
        benchmark::DoNotOptimize(r.value.lo());
    }
}
BENCHMARK(BM_FastReport2Dim)->Unit(benchmark::kMillisecond);

void BM_MonteCarloG2(benchmark::State& state) {
    for (auto _ : state) {
        OracleEstimate est = mc_term(TermId::G2, 100000, 1, table());
        benchmark::DoNotOptimize(est.mean);
    }
}
BENCHMARK(BM_MonteCarloG2)->Unit(benchmark::kMillisecond);

void BM_EmpiricalRho(benchmark::State& state) {
    for (auto _ : state) {
        PrimitiveCount p = empirical_rho(10000);
        benchmark::DoNotOptimize(p.count);
    }
}
BENCHMARK(BM_EmpiricalRho)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
