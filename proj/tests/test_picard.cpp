#include <doctest.h>

#include "mkv/solver.hpp"
#include "support.hpp"

using namespace mkv;

namespace {

SolverConfig picard_config() {
    SolverConfig cfg;
    cfg.half_width = 4;
    cfg.particles = 8;
    cfg.delay = 0.1;
    cfg.dt = 0.01;
    cfg.seed = 99;
    return cfg;
}

InitialCondition start() {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::gaussian;
    ic.scale = 1.0;
    return ic;
}

}  // namespace

TEST_CASE("Picard iterates agree with Euler-Maruyama on a growing prefix") {
    const SolverConfig cfg = picard_config();
    BenchmarkFamily fam;
    fam.periodic_forcing = true;
    const auto c = fam.coefficients();
    const ModelParams model{1.0, 6.0};
    constexpr int steps = 30;
    const int K = cfg.delay_steps();

    const EnsemblePath em = em_path(cfg, start(), c, model, steps);
    const PicardResult pr = picard_solve(cfg, start(), c, model, steps, steps);
    REQUIRE(pr.iterates.size() == steps + 1);

    for (int n = 0; n <= steps; ++n) {
        CHECK(path_max_difference(pr.iterates[static_cast<std::size_t>(n)], em, K, n) == 0.0);
        // early iterates are still off beyond their prefix; later ones converge to rounding level
        if (n < 5) CHECK(path_max_difference(pr.iterates[static_cast<std::size_t>(n)], em, K, n + 1) > 0.0);
    }
    CHECK(path_max_difference(pr.iterates.back(), em, K, steps) <= 1e-12);
}

TEST_CASE("Picard seed holds the initial value") {
    const SolverConfig cfg = picard_config();
    const auto c = mkv::testing::linear_set(0.1);
    const PicardResult pr = picard_solve(cfg, start(), c, ModelParams{}, 5, 0);
    REQUIRE(pr.iterates.size() == 1);
    const auto& path = pr.iterates.front();
    const int K = cfg.delay_steps();
    for (const auto& particle : path) {
        REQUIRE(particle.size() == static_cast<std::size_t>(K + 6));
        for (int j = K; j <= K + 5; ++j) CHECK(particle[static_cast<std::size_t>(j)] == particle[static_cast<std::size_t>(K)]);
    }
}

TEST_CASE("successive gaps vanish once the fixed point is reached") {
    const SolverConfig cfg = picard_config();
    const auto c = BenchmarkFamily{}.coefficients();
    constexpr int steps = 12;
    const PicardResult pr = picard_solve(cfg, start(), c, ModelParams{1.0, 6.0}, steps, steps + 4);
    for (int n = steps + 1; n <= steps + 4; ++n) CHECK(pr.successive_gap[static_cast<std::size_t>(n)] == 0.0);
    CHECK(pr.successive_gap[1] > 0.0);
    CHECK_THROWS_AS(picard_solve(cfg, start(), c, ModelParams{}, -1, 2), std::invalid_argument);
}

TEST_CASE("em_path records the stepped ensemble") {
    const SolverConfig cfg = picard_config();
    const auto c = BenchmarkFamily{}.coefficients();
    const EnsemblePath path = em_path(cfg, start(), c, ModelParams{1.0, 6.0}, 7);
    auto ens = init_ensemble(cfg, start());
    for (int s = 0; s < 7; ++s) step_reference(ens, c, ModelParams{1.0, 6.0});
    const int K = cfg.delay_steps();
    for (int k = 0; k < cfg.particles; ++k) {
        const auto frames = ens.particle(k).ordered_frames();
        for (int j = 0; j <= K; ++j)
            CHECK(path[static_cast<std::size_t>(k)][static_cast<std::size_t>(7 + j)] == frames[static_cast<std::size_t>(j)]);
    }
}
