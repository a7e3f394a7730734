#include "mkv/solver.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>

#include "detail/kernel.hpp"
#include "mkv/rng.hpp"

namespace mkv {

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("solver: dt must be > 0");
    if (half_width < 1) throw std::invalid_argument("solver: half_width must be >= 1");
    if (particles < 1) throw std::invalid_argument("solver: particles must be >= 1");
    (void)delay_steps();
}

DivergenceError::DivergenceError(int particle_, int site_, std::uint32_t step_)
    : std::runtime_error("non-finite state at particle " + std::to_string(particle_) + ", site " +
                         std::to_string(site_) + ", step " + std::to_string(step_) +
                         " (dt too large for the stiffness of lambda and the drift?)"),
      particle(particle_), site(site_), step(step_) {}

ParticleEnsemble::ParticleEnsemble(SolverConfig cfg, std::vector<SegmentBuffer> particles)
    : cfg_(cfg), particles_(std::move(particles)) {
    cfg_.validate();
    if (particles_.size() != static_cast<std::size_t>(cfg_.particles))
        throw std::invalid_argument("ensemble: particle count does not match config");
    for (const auto& p : particles_)
        if (p.half_width() != cfg_.half_width || p.steps() != cfg_.delay_steps())
            throw DimensionError("ensemble: particle segment does not match config grid");
}

bool ParticleEnsemble::operator==(const ParticleEnsemble& other) const {
    if (!(cfg_ == other.cfg_) || step_index_ != other.step_index_) return false;
    for (std::size_t k = 0; k < particles_.size(); ++k)
        for (std::size_t j = 0; j < particles_[k].frame_count(); ++j)
            if (!(particles_[k].frame(j) == other.particles_[k].frame(j))) return false;
    return true;
}

namespace {

bool in_support(int site, int radius) { return radius < 0 || std::abs(site) <= radius; }

SegmentBuffer sample_segment(const SolverConfig& cfg, const InitialCondition& ic, int k) {
    const int I = cfg.half_width;
    switch (ic.kind) {
    case InitialCondition::Kind::zero:
        return SegmentBuffer(cfg.delay, cfg.dt, LatticeVector(I));
    case InitialCondition::Kind::constant: {
        LatticeVector u(I);
        for (int i = -I; i <= I; ++i)
            if (in_support(i, ic.radius)) u[i] = ic.scale;
        return SegmentBuffer(cfg.delay, cfg.dt, u);
    }
    case InitialCondition::Kind::gaussian: {
        LatticeVector u(I);
        const auto stream = static_cast<std::uint32_t>(Stream::initial) + ic.stream;
        for (int i = -I; i <= I; ++i)
            if (in_support(i, ic.radius))
                u[i] = ic.scale * counter_normal(cfg.seed, static_cast<std::uint32_t>(k),
                                                 static_cast<std::uint32_t>(i + I), 0, stream);
        return SegmentBuffer(cfg.delay, cfg.dt, u);
    }
    case InitialCondition::Kind::deterministic:
        if (ic.frames.size() == 1) return SegmentBuffer(cfg.delay, cfg.dt, ic.frames.front());
        return SegmentBuffer(cfg.delay, cfg.dt, ic.frames);
    }
    throw std::logic_error("unknown initial condition kind");
}

}  // namespace

ParticleEnsemble init_ensemble(const SolverConfig& cfg, const InitialCondition& ic) {
    cfg.validate();
    if (ic.kind == InitialCondition::Kind::deterministic) {
        if (ic.frames.empty()) throw std::invalid_argument("deterministic initial condition needs frames");
        if (ic.frames.front().half_width() != cfg.half_width)
            throw DimensionError("deterministic initial condition: half_width mismatch");
    }
    std::vector<SegmentBuffer> particles;
    particles.reserve(static_cast<std::size_t>(cfg.particles));
    for (int k = 0; k < cfg.particles; ++k) particles.push_back(sample_segment(cfg, ic, k));
    return ParticleEnsemble(cfg, std::move(particles));
}

std::vector<double> site_law_m2root(const ParticleEnsemble& ens, const Execution& exec) {
    const int sites = 2 * ens.half_width() + 1;
    const int n = ens.size();
    std::vector<double> m(static_cast<std::size_t>(sites));
#pragma omp parallel for num_threads(exec.threads) schedule(static)
    for (int j = 0; j < sites; ++j)
        m[static_cast<std::size_t>(j)] = detail::site_m2root(
            n, static_cast<std::size_t>(j), [&](int k) -> const LatticeVector& { return ens.particle(k).newest(); });
    return m;
}

namespace {

std::vector<double> forcing_row(const CoefficientSet& c, int I, double t) {
    std::vector<double> g(static_cast<std::size_t>(2 * I + 1));
    for (int i = -I; i <= I; ++i) g[static_cast<std::size_t>(i + I)] = c.forcing(i, t);
    return g;
}

}  // namespace

void step(ParticleEnsemble& ens, const CoefficientSet& coeffs, const ModelParams& model, const Execution& exec) {
    const SolverConfig& cfg = ens.config();
    const int I = cfg.half_width;
    const int n = ens.size();
    const double t = ens.time();
    const double dt = cfg.dt;
    const double sqrt_dt = std::sqrt(dt);
    const std::uint32_t s = ens.step_index();

    // Barrier: site laws at time t are fixed before any particle moves.
    const std::vector<double> m = site_law_m2root(ens, exec);
    const std::vector<double> g = forcing_row(coeffs, I, t);
    std::vector<int> bad_site(static_cast<std::size_t>(n), INT_MAX);

#pragma omp parallel for num_threads(exec.threads) schedule(static)
    for (int k = 0; k < n; ++k) {
        SegmentBuffer& seg = ens.particle(k);
        const LatticeVector& cur = seg.newest();
        // The recycled slot still holds u(t - r); each site reads its delayed value before overwriting.
        LatticeVector& next = seg.recycle_oldest();
        for (int i = -I; i <= I; ++i) {
            const auto slot = static_cast<std::size_t>(i + I);
            const double delayed = next[i];
            const double centre = cur[i];
            const double dW =
                wiener_increment(cfg.seed, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(slot), s, sqrt_dt);
            const double value = centre + detail::site_increment(coeffs, model, i, t, dt, cur.padded(i - 1), centre,
                                                                  cur.padded(i + 1), delayed, m[slot], g[slot], dW);
            next[i] = value;
            if (!std::isfinite(value) && bad_site[static_cast<std::size_t>(k)] == INT_MAX)
                bad_site[static_cast<std::size_t>(k)] = i;
        }
    }
    for (int k = 0; k < n; ++k)
        if (bad_site[static_cast<std::size_t>(k)] != INT_MAX) throw DivergenceError(k, bad_site[static_cast<std::size_t>(k)], s);
    ens.advance_clock();
}

void step_reference(ParticleEnsemble& ens, const CoefficientSet& coeffs, const ModelParams& model) {
    const SolverConfig& cfg = ens.config();
    const int I = cfg.half_width;
    const int n = ens.size();
    const double t = ens.time();
    const double sqrt_dt = std::sqrt(cfg.dt);
    const std::uint32_t s = ens.step_index();

    std::vector<double> m(static_cast<std::size_t>(2 * I + 1));
    for (int i = -I; i <= I; ++i) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += ens.particle(k).newest()[i] * ens.particle(k).newest()[i];
        m[static_cast<std::size_t>(i + I)] = std::sqrt(sum / n);
    }

    std::vector<LatticeVector> next(static_cast<std::size_t>(n), LatticeVector(I));
    for (int k = 0; k < n; ++k) {
        const LatticeVector& cur = ens.particle(k).newest();
        const LatticeVector& delayed = ens.particle(k).oldest();
        for (int i = -I; i <= I; ++i) {
            const auto slot = static_cast<std::uint32_t>(i + I);
            const double dW = wiener_increment(cfg.seed, static_cast<std::uint32_t>(k), slot, s, sqrt_dt);
            const double value = cur[i] + detail::site_increment(coeffs, model, i, t, cfg.dt, cur.padded(i - 1),
                                                                  cur[i], cur.padded(i + 1), delayed[i], m[slot],
                                                                  coeffs.forcing(i, t), dW);
            if (!std::isfinite(value)) throw DivergenceError(k, i, s);
            next[static_cast<std::size_t>(k)][i] = value;
        }
    }
    for (int k = 0; k < n; ++k) ens.particle(k).push(next[static_cast<std::size_t>(k)]);
    ens.advance_clock();
}

int steps_between(double t0, double t1, double dt) {
    const double ratio = (t1 - t0) / dt;
    const double k = std::round(ratio);
    if (k < 0.0 || std::abs(ratio - k) > 1e-8 * std::max(1.0, std::abs(ratio)))
        throw std::invalid_argument("run_until: (T - t)/dt must be a non-negative integer");
    return static_cast<int>(k);
}

void run_until(ParticleEnsemble& ens, const CoefficientSet& coeffs, const ModelParams& model, double T,
               const Execution& exec) {
    const int steps = steps_between(ens.time(), T, ens.config().dt);
    for (int s = 0; s < steps; ++s) step(ens, coeffs, model, exec);
}

// ---- segment functionals ---------------------------------------------------

namespace {

double sq_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double sup_sq_norm(const SegmentBuffer& seg) {
    double best = 0.0;
    for (std::size_t j = 0; j < seg.frame_count(); ++j) best = std::max(best, sq_norm(seg.frame(j).values()));
    return best;
}

}  // namespace

double second_moment_segment(const ParticleEnsemble& ens) {
    double s = 0.0;
    for (int k = 0; k < ens.size(); ++k) s += sup_sq_norm(ens.particle(k));
    return s / ens.size();
}

double fourth_moment_segment(const ParticleEnsemble& ens) {
    double s = 0.0;
    for (int k = 0; k < ens.size(); ++k) {
        const double n2 = sup_sq_norm(ens.particle(k));
        s += n2 * n2;
    }
    return s / ens.size();
}

double segment_tail_mass(const ParticleEnsemble& ens, int n) {
    double s = 0.0;
    for (int k = 0; k < ens.size(); ++k) {
        const SegmentBuffer& seg = ens.particle(k);
        double best = 0.0;
        for (std::size_t j = 0; j < seg.frame_count(); ++j) best = std::max(best, tail_mass(seg.frame(j), n));
        s += best;
    }
    return s / ens.size();
}

// ---- coupling ----------------------------------------------------------------

CoupledPair make_coupled_pair(const SolverConfig& cfg, const InitialCondition& ic_a, const InitialCondition& ic_b) {
    return {init_ensemble(cfg, ic_a), init_ensemble(cfg, ic_b)};
}

double coupled_gap(const ParticleEnsemble& a, const ParticleEnsemble& b) {
    if (!(a.config() == b.config()) || a.step_index() != b.step_index())
        throw std::invalid_argument("coupled_gap: ensembles are not on a common grid");
    double s = 0.0;
    for (int k = 0; k < a.size(); ++k) {
        const SegmentBuffer& sa = a.particle(k);
        const SegmentBuffer& sb = b.particle(k);
        double best = 0.0;
        for (std::size_t j = 0; j < sa.frame_count(); ++j) {
            const auto x = sa.frame(j).values();
            const auto y = sb.frame(j).values();
            double d = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] - y[i]) * (x[i] - y[i]);
            best = std::max(best, d);
        }
        s += best;
    }
    return s / a.size();
}

DecaySeries couple_run(CoupledPair& pair, const CoefficientSet& coeffs, const ModelParams& model, double T,
                       int record_every, const Execution& exec, const PairObserver& observer) {
    if (record_every < 1) throw std::invalid_argument("couple_run: record_every must be >= 1");
    if (!(pair.a.config() == pair.b.config()))
        throw std::invalid_argument("couple_run: coupled ensembles need identical configs");
    const int steps = steps_between(pair.a.time(), T, pair.a.config().dt);
    DecaySeries out;
    auto record = [&] {
        out.t.push_back(pair.a.time());
        out.gap.push_back(coupled_gap(pair.a, pair.b));
        if (observer) observer(pair);
    };
    record();
    for (int s = 1; s <= steps; ++s) {
        step(pair.a, coeffs, model, exec);
        step(pair.b, coeffs, model, exec);
        if (s % record_every == 0) record();
    }
    return out;
}

}  // namespace mkv
