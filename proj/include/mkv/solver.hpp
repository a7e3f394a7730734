#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mkv/coefficients.hpp"
#include "mkv/lattice.hpp"

namespace mkv {

struct SolverConfig {
    double dt = 0.01;
    int half_width = 8;
    int particles = 512;
    double delay = 0.2;
    double t_start = 0.0;
    std::uint64_t seed = 1;

    int delay_steps() const { return mkv::delay_steps(delay, dt); }
    void validate() const;
    bool operator==(const SolverConfig&) const = default;
};

/// Linear part of the lattice equation: nu (discrete Laplacian) - lambda u.
struct ModelParams {
    double nu = 1.0;
    double lambda = 1.0;
};

/// Worker-thread count for the OpenMP kernels. Results never depend on it.
struct Execution {
    int threads = 1;
};

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(int particle, int site, std::uint32_t step);
    int particle;
    int site;
    std::uint32_t step;
};

struct InitialCondition {
    enum class Kind {
        zero,           // point mass at the zero segment
        constant,       // u_i = scale on |i| <= radius, constant in time
        gaussian,       // u_i = scale * N(0,1) i.i.d. on |i| <= radius, constant in time
        deterministic,  // explicit frames shared by every particle
    };
    Kind kind = Kind::zero;
    double scale = 0.0;
    int radius = -1;  // negative: every site
    std::uint32_t stream = 0;
    std::vector<LatticeVector> frames;  // deterministic: K+1 frames oldest first, or a single frame
};

/// N interacting particles, each carrying its delay segment over [t - r, t].
class ParticleEnsemble {
public:
    ParticleEnsemble(SolverConfig cfg, std::vector<SegmentBuffer> particles);

    const SolverConfig& config() const { return cfg_; }
    int size() const { return static_cast<int>(particles_.size()); }
    int half_width() const { return cfg_.half_width; }
    double time() const { return cfg_.t_start + static_cast<double>(step_index_) * cfg_.dt; }
    std::uint32_t step_index() const { return step_index_; }

    const SegmentBuffer& particle(int k) const { return particles_[static_cast<std::size_t>(k)]; }
    SegmentBuffer& particle(int k) { return particles_[static_cast<std::size_t>(k)]; }

    void advance_clock() { ++step_index_; }

    bool operator==(const ParticleEnsemble& other) const;

private:
    SolverConfig cfg_;
    std::vector<SegmentBuffer> particles_;
    std::uint32_t step_index_ = 0;
};

ParticleEnsemble init_ensemble(const SolverConfig& cfg, const InitialCondition& ic);

/// sqrt((1/N) sum_k u_{k,i}(t)^2) per site, i.e. W2 of each current site law to delta_0.
std::vector<double> site_law_m2root(const ParticleEnsemble& ens, const Execution& exec = {});

/// One explicit Euler-Maruyama step of every particle (OpenMP over particles).
void step(ParticleEnsemble& ens, const CoefficientSet& coeffs, const ModelParams& model, const Execution& exec = {});

/// Serial reference implementation of step(); bitwise identical results.
void step_reference(ParticleEnsemble& ens, const CoefficientSet& coeffs, const ModelParams& model);

/// Steps until time T; (T - t)/dt must be integral.
void run_until(ParticleEnsemble& ens, const CoefficientSet& coeffs, const ModelParams& model, double T,
               const Execution& exec = {});

int steps_between(double t0, double t1, double dt);

// ---- segment functionals ---------------------------------------------------

/// (1/N) sum_k ||u_k||_{C_r}^2
double second_moment_segment(const ParticleEnsemble& ens);
/// (1/N) sum_k ||u_k||_{C_r}^4
double fourth_moment_segment(const ParticleEnsemble& ens);
/// (1/N) sum_k sup over frames of tail_mass(frame, n)
double segment_tail_mass(const ParticleEnsemble& ens, int n);

// ---- synchronous coupling --------------------------------------------------

/// Two ensembles sharing config and seed, hence identical Brownian increments.
struct CoupledPair {
    ParticleEnsemble a;
    ParticleEnsemble b;
};

CoupledPair make_coupled_pair(const SolverConfig& cfg, const InitialCondition& ic_a, const InitialCondition& ic_b);

/// (1/N) sum_k ||a_k - b_k||_{C_r}^2
double coupled_gap(const ParticleEnsemble& a, const ParticleEnsemble& b);

struct DecaySeries {
    std::vector<double> t;
    std::vector<double> gap;
};

using PairObserver = std::function<void(const CoupledPair&)>;

/// Steps both ensembles to T on shared noise, recording the coupled gap every
/// `record_every` steps (and at the start). `observer` runs at every record point.
DecaySeries couple_run(CoupledPair& pair, const CoefficientSet& coeffs, const ModelParams& model, double T,
                       int record_every, const Execution& exec = {}, const PairObserver& observer = {});

// ---- Picard iteration ------------------------------------------------------

/// Path of every particle on the grid; index j = 0..K+steps, j = K is t_start.
using ParticlePath = std::vector<LatticeVector>;
using EnsemblePath = std::vector<ParticlePath>;

/// Explicit EM path on the same noise, recorded frame by frame.
EnsemblePath em_path(const SolverConfig& cfg, const InitialCondition& ic, const CoefficientSet& coeffs,
                     const ModelParams& model, int steps);

struct PicardResult {
    std::vector<EnsemblePath> iterates;    // iterates[0] holds zeta(0) constant after t_start
    std::vector<double> successive_gap;    // max |u^(n) - u^(n-1)|, entry 0 unused (0)
};

/// Discrete Picard scheme: iterate n integrates the coefficients, neighbours and site laws
/// of iterate n-1 against the fixed noise path.
PicardResult picard_solve(const SolverConfig& cfg, const InitialCondition& ic, const CoefficientSet& coeffs,
                          const ModelParams& model, int steps, int iterations);

/// max |a - b| over particles, sites and path indices j <= K + first_steps.
double path_max_difference(const EnsemblePath& a, const EnsemblePath& b, int delay_steps, int first_steps);

}  // namespace mkv
