#pragma once

#include <optional>

#include "mkv/certify.hpp"
#include "mkv/records.hpp"
#include "mkv/scenario.hpp"
#include "mkv/solver.hpp"

namespace mkv {

/// Everything an experiment needs once the scenario is resolved; tests build these
/// directly to run experiments on hand-made coefficient sets.
struct ExperimentInputs {
    SolverConfig solver;
    double horizon = 4.0;
    ModelParams model;
    CoefficientSet coeffs;
    InitialCondition ic_a;
    InitialCondition ic_b;
    ExperimentBlock experiment;
    std::optional<Certificate> certificate;
    std::uint64_t scenario_hash = 0;
};

ExperimentInputs resolve_scenario(const ScenarioConfig& sc);
NormBounds scenario_bounds(const ScenarioConfig& sc);

RunRecord contraction_experiment(const ExperimentInputs& in, const Execution& exec = {});
RunRecord mixing_experiment(const ExperimentInputs& in, const Execution& exec = {});
RunRecord absorption_experiment(const ExperimentInputs& in, const Execution& exec = {});
RunRecord tails_experiment(const ExperimentInputs& in, const Execution& exec = {});
RunRecord simulate_experiment(const ExperimentInputs& in, const Execution& exec = {});
RunRecord picard_experiment(const ExperimentInputs& in);

/// Sweep over eps: base system vs its perturbation on identical noise and initial data.
RunRecord eps_sweep_experiment(const ExperimentInputs& in, const CoefficientSet& base,
                               const std::function<CoefficientSet(double eps)>& perturbed,
                               const Execution& exec = {});

RunRecord run_simulate(const ScenarioConfig& sc, const Execution& exec = {});
RunRecord run_contraction(const ScenarioConfig& sc, const Execution& exec = {});
RunRecord run_mixing(const ScenarioConfig& sc, const Execution& exec = {});
RunRecord run_eps_sweep(const ScenarioConfig& sc, const Execution& exec = {});
RunRecord run_absorption(const ScenarioConfig& sc, const Execution& exec = {});
RunRecord run_tails(const ScenarioConfig& sc, const Execution& exec = {});
RunRecord run_certify(const ScenarioConfig& sc, std::size_t probe_samples = 10000);
RunRecord run_picard_check(const ScenarioConfig& sc);

/// Dispatch by subcommand name (simulate, contract, mix, sweep-eps, absorb, tails, certify, picard-check).
RunRecord run_experiment(const std::string& kind, const ScenarioConfig& sc, const Execution& exec = {});

/// First index from which |a - b| <= max(rel_tol max(|a|,|b|), abs_tol) holds through the end.
std::optional<std::size_t> agreement_start(std::span<const double> a, std::span<const double> b, double rel_tol,
                                           double abs_tol);

}  // namespace mkv
