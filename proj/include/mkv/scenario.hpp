#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mkv/coefficients.hpp"
#include "mkv/solver.hpp"

namespace mkv {

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int line, const std::string& key, const std::string& message);
    int line;
    std::string key;
};

struct SolverBlock {
    SolverConfig solver;
    double horizon = 4.0;  // T, end time of every run
    bool operator==(const SolverBlock&) const = default;
};

struct ModelBlock {
    double nu = 1.0;
    double lambda = 6.0;
    double c1 = 2.0;
    bool operator==(const ModelBlock&) const = default;
};

struct PerturbationBlock {
    double rho_bar = 1.0;
    double tau_bar = 0.5;
    bool operator==(const PerturbationBlock&) const = default;
};

struct InitialBlock {
    InitialCondition::Kind kind = InitialCondition::Kind::zero;
    double scale = 0.0;
    int radius = -1;
    std::uint32_t stream = 0;
    bool operator==(const InitialBlock&) const = default;

    InitialCondition condition() const;
};

struct ExperimentBlock {
    std::string kind = "simulate";
    int record_every = 5;
    double fit_start = 0.5;
    double fit_end = 4.0;
    std::vector<double> eps_list{0.0, 0.02, 0.04, 0.08, 0.16, 0.32};
    std::vector<int> tail_indices{0, 2, 4, 8, 16};
    double agreement_tol = 0.05;
    double agreement_abs_tol = 1e-8;
    int picard_iterations = 0;  // 0: as many as steps
    bool operator==(const ExperimentBlock&) const = default;
};

struct ScenarioConfig {
    SolverBlock solver;
    ModelBlock model;
    BenchmarkFamily benchmark;
    PerturbationBlock perturbation;
    InitialBlock initial_a{InitialCondition::Kind::gaussian, 1.0, -1, 0};
    InitialBlock initial_b;
    ExperimentBlock experiment;
    std::string output_path;

    bool operator==(const ScenarioConfig&) const = default;

    /// Throws ScenarioError (line 0) for out-of-range parameters.
    void validate() const;
    ModelParams model_params() const { return {model.nu, model.lambda}; }
};

/// Sectioned `key = value` text; '#' starts a comment. Missing keys keep their defaults.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);
std::string render_scenario(const ScenarioConfig& sc);

/// FNV-1a of the rendered scenario with the output path cleared.
std::uint64_t scenario_hash(const ScenarioConfig& sc);

std::string to_string(InitialCondition::Kind kind);

}  // namespace mkv
