#include <algorithm>
#include <cmath>

#include "detail/kernel.hpp"
#include "mkv/rng.hpp"
#include "mkv/solver.hpp"

namespace mkv {

EnsemblePath em_path(const SolverConfig& cfg, const InitialCondition& ic, const CoefficientSet& coeffs,
                     const ModelParams& model, int steps) {
    ParticleEnsemble ens = init_ensemble(cfg, ic);
    EnsemblePath path(static_cast<std::size_t>(cfg.particles));
    for (int k = 0; k < cfg.particles; ++k) path[static_cast<std::size_t>(k)] = ens.particle(k).ordered_frames();
    for (int s = 0; s < steps; ++s) {
        step(ens, coeffs, model);
        for (int k = 0; k < cfg.particles; ++k) path[static_cast<std::size_t>(k)].push_back(ens.particle(k).newest());
    }
    return path;
}

namespace {

EnsemblePath picard_seed(const SolverConfig& cfg, const InitialCondition& ic, int steps) {
    const ParticleEnsemble init = init_ensemble(cfg, ic);
    EnsemblePath path(static_cast<std::size_t>(cfg.particles));
    for (int k = 0; k < cfg.particles; ++k) {
        auto& p = path[static_cast<std::size_t>(k)];
        p = init.particle(k).ordered_frames();
        const LatticeVector start = p.back();
        p.insert(p.end(), static_cast<std::size_t>(steps), start);
    }
    return path;
}

EnsemblePath picard_iterate(const SolverConfig& cfg, const EnsemblePath& prev, const CoefficientSet& coeffs,
                            const ModelParams& model, int steps) {
    const int I = cfg.half_width;
    const int K = cfg.delay_steps();
    const int n = cfg.particles;
    const double sqrt_dt = std::sqrt(cfg.dt);

    EnsemblePath next(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        auto& p = next[static_cast<std::size_t>(k)];
        p.assign(prev[static_cast<std::size_t>(k)].begin(), prev[static_cast<std::size_t>(k)].begin() + K + 1);
        p.reserve(static_cast<std::size_t>(K + 1 + steps));
    }

    std::vector<double> m(static_cast<std::size_t>(2 * I + 1));
    for (int s = 0; s < steps; ++s) {
        const auto j = static_cast<std::size_t>(K + s);
        const double t = cfg.t_start + static_cast<double>(s) * cfg.dt;
        for (int i = -I; i <= I; ++i)
            m[static_cast<std::size_t>(i + I)] = detail::site_m2root(
                n, static_cast<std::size_t>(i + I),
                [&](int k) -> const LatticeVector& { return prev[static_cast<std::size_t>(k)][j]; });
        for (int k = 0; k < n; ++k) {
            const LatticeVector& old = prev[static_cast<std::size_t>(k)][j];
            const LatticeVector& delayed = prev[static_cast<std::size_t>(k)][j - static_cast<std::size_t>(K)];
            auto& p = next[static_cast<std::size_t>(k)];
            LatticeVector value = p[j];
            for (int i = -I; i <= I; ++i) {
                const auto slot = static_cast<std::uint32_t>(i + I);
                const double dW = wiener_increment(cfg.seed, static_cast<std::uint32_t>(k), slot,
                                                   static_cast<std::uint32_t>(s), sqrt_dt);
                value[i] += detail::site_increment(coeffs, model, i, t, cfg.dt, old.padded(i - 1), old[i],
                                                   old.padded(i + 1), delayed[i], m[slot], coeffs.forcing(i, t), dW);
            }
            p.push_back(std::move(value));
        }
    }
    return next;
}

}  // namespace

double path_max_difference(const EnsemblePath& a, const EnsemblePath& b, int delay_steps, int first_steps) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const std::size_t last = std::min({a[k].size(), b[k].size(), static_cast<std::size_t>(delay_steps + first_steps + 1)});
        for (std::size_t j = 0; j < last; ++j) {
            const auto x = a[k][j].values();
            const auto y = b[k][j].values();
            for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
        }
    }
    return worst;
}

PicardResult picard_solve(const SolverConfig& cfg, const InitialCondition& ic, const CoefficientSet& coeffs,
                          const ModelParams& model, int steps, int iterations) {
    if (steps < 0 || iterations < 0) throw std::invalid_argument("picard_solve: steps and iterations must be >= 0");
    const int K = cfg.delay_steps();
    PicardResult out;
    out.iterates.push_back(picard_seed(cfg, ic, steps));
    out.successive_gap.push_back(0.0);
    for (int n = 1; n <= iterations; ++n) {
        out.iterates.push_back(picard_iterate(cfg, out.iterates.back(), coeffs, model, steps));
        const auto& cur = out.iterates.back();
        const auto& prev = out.iterates[out.iterates.size() - 2];
        out.successive_gap.push_back(path_max_difference(cur, prev, K, steps));
    }
    return out;
}

}  // namespace mkv
