// Serial reference stepper against the OpenMP stepper at several thread counts.
#include <benchmark/benchmark.h>

#include "mkv/solver.hpp"

namespace {

mkv::ParticleEnsemble make_ensemble(int particles) {
    mkv::SolverConfig cfg;
    cfg.half_width = 8;
    cfg.particles = particles;
    mkv::InitialCondition ic;
    ic.kind = mkv::InitialCondition::Kind::gaussian;
    ic.scale = 1.0;
    return mkv::init_ensemble(cfg, ic);
}

void BM_step_reference(benchmark::State& state) {
    const auto coeffs = mkv::BenchmarkFamily{}.coefficients();
    auto ens = make_ensemble(static_cast<int>(state.range(0)));
    for (auto _ : state) mkv::step_reference(ens, coeffs, {1.0, 6.0});
    state.SetItemsProcessed(state.iterations() * state.range(0) * 17);
}

void BM_step_openmp(benchmark::State& state) {
    const auto coeffs = mkv::BenchmarkFamily{}.coefficients();
    auto ens = make_ensemble(static_cast<int>(state.range(0)));
    const mkv::Execution exec{static_cast<int>(state.range(1))};
    for (auto _ : state) mkv::step(ens, coeffs, {1.0, 6.0}, exec);
    state.SetItemsProcessed(state.iterations() * state.range(0) * 17);
}

}  // namespace

BENCHMARK(BM_step_reference)->Arg(512)->Arg(4096);
BENCHMARK(BM_step_openmp)->ArgsProduct({{512, 4096}, {1, 2, 4}});

BENCHMARK_MAIN();
