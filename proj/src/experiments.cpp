#include "mkv/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mkv/fit.hpp"
#include "mkv/measures.hpp"

namespace mkv {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

RunRecord start_record(const std::string& kind, const ExperimentInputs& in) {
    RunRecord rec;
    rec.kind = kind;
    rec.picture = in.coeffs.time_dependent ? "forward-periodic" : "forward-autonomous";
    rec.scenario_hash = in.scenario_hash;
    rec.seed = in.solver.seed;
    rec.certificate = in.certificate;
    return rec;
}

double certified_rate(const ExperimentInputs& in) {
    return in.certificate && in.certificate->feasible ? in.certificate->eps_star : 0.0;
}

/// Adds a decay fit of `values` over the configured window when enough positive points exist.
std::optional<FitEntry> add_decay_fit(RunRecord& rec, const std::string& metric, const std::vector<double>& t,
                                      const std::vector<double>& values, const ExperimentBlock& exp) {
    int usable = 0;
    for (std::size_t j = 0; j < t.size(); ++j)
        if (t[j] >= exp.fit_start && t[j] <= exp.fit_end && values[j] > 0.0) ++usable;
    if (usable < 2) return std::nullopt;
    const RateFit fit = fit_exponential_rate(t, values, exp.fit_start, exp.fit_end);
    FitEntry e{metric, fit.rate, fit.line.slope, fit.line.intercept, fit.line.residual, fit.line.points};
    rec.fits.push_back(e);
    return e;
}

void add_rate_check(RunRecord& rec, const std::string& name, const std::optional<FitEntry>& fit, double factor,
                    const ExperimentInputs& in) {
    const double eps = certified_rate(in);
    if (eps <= 0.0) {
        // infeasible certificate: comparison is informational only
        rec.add_check(name + "_informational", true, fit ? fit->rate : 0.0, 0.0);
        return;
    }
    rec.add_check(name, fit && fit->rate >= factor * eps, fit ? fit->rate : 0.0, factor * eps);
}

}  // namespace

NormBounds scenario_bounds(const ScenarioConfig& sc) {
    return make_bounds(sc.benchmark.coefficients().norms, sc.model.lambda, sc.model.nu, sc.solver.solver.delay,
                       sc.model.c1);
}

ExperimentInputs resolve_scenario(const ScenarioConfig& sc) {
    sc.validate();
    ExperimentInputs in;
    in.solver = sc.solver.solver;
    in.horizon = sc.solver.horizon;
    in.model = sc.model_params();
    in.coeffs = sc.benchmark.coefficients();
    in.ic_a = sc.initial_a.condition();
    in.ic_b = sc.initial_b.condition();
    in.experiment = sc.experiment;
    in.certificate = build_certificate(scenario_bounds(sc));
    in.scenario_hash = scenario_hash(sc);
    return in;
}

std::optional<std::size_t> agreement_start(std::span<const double> a, std::span<const double> b, double rel_tol,
                                           double abs_tol) {
    if (a.size() != b.size()) throw std::invalid_argument("agreement_start: length mismatch");
    std::optional<std::size_t> start;
    for (std::size_t j = a.size(); j-- > 0;) {
        const double tol = std::max(rel_tol * std::max(std::abs(a[j]), std::abs(b[j])), abs_tol);
        if (std::abs(a[j] - b[j]) > tol) break;
        start = j;
    }
    return start;
}

RunRecord contraction_experiment(const ExperimentInputs& in, const Execution& exec) {
    const auto t0 = Clock::now();
    RunRecord rec = start_record("contract", in);
    CoupledPair pair = make_coupled_pair(in.solver, in.ic_a, in.ic_b);
    const DecaySeries series = couple_run(pair, in.coeffs, in.model, in.horizon, in.experiment.record_every, exec);
    rec.series.axis_values = series.t;
    rec.series.column("D") = series.gap;

    const auto fit = add_decay_fit(rec, "D", series.t, series.gap, in.experiment);
    rec.add_summary("D_initial", series.gap.front());
    rec.add_summary("D_final", series.gap.back());
    add_rate_check(rec, "rate_vs_certificate", fit, 0.8, in);
    rec.wall_clock_s = seconds_since(t0);
    return rec;
}

RunRecord mixing_experiment(const ExperimentInputs& in, const Execution& exec) {
    if (in.coeffs.time_dependent)
        throw std::invalid_argument("mixing experiment requires autonomous coefficients (periodic_forcing = false)");
    const auto t0 = Clock::now();
    RunRecord rec = start_record("mix", in);
    CoupledPair pair = make_coupled_pair(in.solver, in.ic_a, in.ic_b);
    std::vector<double> rho_track;
    const DecaySeries series =
        couple_run(pair, in.coeffs, in.model, in.horizon, in.experiment.record_every, exec,
                   [&](const CoupledPair& p) { rho_track.push_back(rho(law_of_ensemble(p.a), law_of_ensemble(p.b))); });
    std::vector<double> rms(series.gap.size());
    std::transform(series.gap.begin(), series.gap.end(), rms.begin(), [](double d) { return std::sqrt(d); });

    rec.series.axis_values = series.t;
    rec.series.column("coupling_rms") = rms;
    rec.series.column("rho") = rho_track;

    const auto rms_fit = add_decay_fit(rec, "coupling_rms", series.t, rms, in.experiment);
    add_decay_fit(rec, "rho", series.t, rho_track, in.experiment);
    add_rate_check(rec, "rms_rate_vs_certificate", rms_fit, 0.4, in);

    // rho^2 <= (1/N) sum_k |A_k(t) - B_k(t)|^2 <= D(t); the factor absorbs summation-order rounding.
    double worst_ratio = 0.0;
    bool dominated = true;
    for (std::size_t j = 0; j < rms.size(); ++j) {
        if (rho_track[j] > rms[j] * (1.0 + 1e-12)) dominated = false;
        if (rms[j] > 0.0) worst_ratio = std::max(worst_ratio, rho_track[j] / rms[j]);
        else if (rho_track[j] > 0.0) worst_ratio = std::numeric_limits<double>::infinity();
    }
    rec.add_check("rho_below_coupling", dominated, worst_ratio, 1.0);
    rec.wall_clock_s = seconds_since(t0);
    return rec;
}

RunRecord eps_sweep_experiment(const ExperimentInputs& in, const CoefficientSet& base,
                               const std::function<CoefficientSet(double)>& perturbed, const Execution& exec) {
    const auto t0 = Clock::now();
    RunRecord rec = start_record("sweep-eps", in);
    rec.picture = base.time_dependent ? "forward-periodic" : "forward-autonomous";

    std::vector<double> eps = in.experiment.eps_list;
    std::sort(eps.begin(), eps.end());
    ParticleEnsemble reference = init_ensemble(in.solver, in.ic_a);
    run_until(reference, base, in.model, in.horizon, exec);

    std::vector<double> mse;
    for (double e : eps) {
        ParticleEnsemble ens = init_ensemble(in.solver, in.ic_a);
        run_until(ens, perturbed(e), in.model, in.horizon, exec);
        mse.push_back(coupled_gap(ens, reference));
    }
    rec.series.axis = "eps";
    rec.series.axis_values = eps;
    rec.series.column("mse") = mse;

    bool monotone = true;
    for (std::size_t j = 1; j < mse.size(); ++j) monotone = monotone && mse[j] > mse[j - 1];
    rec.add_check("mse_monotone", monotone, static_cast<double>(mse.size()), 0.0);
    for (std::size_t j = 0; j < eps.size(); ++j)
        if (eps[j] == 0.0) rec.add_check("mse_zero_at_zero", mse[j] == 0.0, mse[j], 0.0);

    int positive = 0;
    for (std::size_t j = 0; j < eps.size(); ++j) positive += (eps[j] > 0.0 && mse[j] > 0.0);
    if (positive >= 2) {
        const LineFit fit = fit_power_law(eps, mse);
        rec.fits.push_back({"mse_vs_eps", fit.slope, fit.slope, fit.intercept, fit.residual, fit.points});
        rec.add_check("loglog_slope", fit.slope >= 0.9, fit.slope, 0.9);
    } else {
        rec.add_check("loglog_slope", false, 0.0, 0.9);
    }
    rec.wall_clock_s = seconds_since(t0);
    return rec;
}

RunRecord absorption_experiment(const ExperimentInputs& in, const Execution& exec) {
    const auto t0 = Clock::now();
    RunRecord rec = start_record("absorb", in);
    std::vector<double> m2a, m2b, m4a, m4b;
    CoupledPair pair = make_coupled_pair(in.solver, in.ic_a, in.ic_b);
    const DecaySeries series = couple_run(pair, in.coeffs, in.model, in.horizon, in.experiment.record_every, exec,
                                          [&](const CoupledPair& p) {
                                              m2a.push_back(second_moment_segment(p.a));
                                              m2b.push_back(second_moment_segment(p.b));
                                              m4a.push_back(fourth_moment_segment(p.a));
                                              m4b.push_back(fourth_moment_segment(p.b));
                                          });
    rec.series.axis_values = series.t;
    rec.series.column("m2_a") = m2a;
    rec.series.column("m2_b") = m2b;
    rec.series.column("m4_a") = m4a;
    rec.series.column("m4_b") = m4b;

    const auto start =
        agreement_start(m4a, m4b, in.experiment.agreement_tol, in.experiment.agreement_abs_tol);
    const std::size_t n = series.t.size();
    // absorbed: agreement holds over at least the final quarter of the records
    const bool absorbed = start.has_value() && *start + (n - 1) / 4 <= n - 1 && n > 1;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    if (start) {
        for (std::size_t j = *start; j < n; ++j) {
            lo = std::min({lo, m4a[j], m4b[j]});
            hi = std::max({hi, m4a[j], m4b[j]});
        }
    }
    const double t_abs = start ? series.t[*start] : std::numeric_limits<double>::infinity();
    rec.add_summary("absorption_time", t_abs);
    rec.add_summary("band_lo", lo);
    rec.add_summary("band_hi", hi);
    rec.add_summary("m4_a_final", m4a.back());
    rec.add_summary("m4_b_final", m4b.back());
    rec.add_check("absorbed", absorbed, t_abs, series.t.back());
    rec.add_check("band_finite", start.has_value() && std::isfinite(lo) && std::isfinite(hi), hi, 0.0);
    rec.wall_clock_s = seconds_since(t0);
    return rec;
}

RunRecord tails_experiment(const ExperimentInputs& in, const Execution& exec) {
    const auto t0 = Clock::now();
    RunRecord rec = start_record("tails", in);
    ParticleEnsemble ens = init_ensemble(in.solver, in.ic_a);
    run_until(ens, in.coeffs, in.model, in.horizon, exec);

    std::vector<int> ns = in.experiment.tail_indices;
    std::sort(ns.begin(), ns.end());
    for (int n : ns)
        if (n < 0 || n > in.solver.half_width + 1)
            throw std::invalid_argument("tails: index " + std::to_string(n) + " outside [0, I+1]");
    const double total = second_moment_segment(ens);
    std::vector<double> axis, tails, fractions;
    for (int n : ns) {
        const double tail = segment_tail_mass(ens, n);
        axis.push_back(n);
        tails.push_back(tail);
        fractions.push_back(total > 0.0 ? tail / total : 0.0);
        rec.add_summary("tail_fraction_n" + std::to_string(n), fractions.back());
    }
    rec.add_summary("total_second_moment", total);
    rec.series.axis = "n";
    rec.series.axis_values = axis;
    rec.series.column("tail_mass") = tails;
    rec.series.column("tail_fraction") = fractions;

    bool monotone = true;
    for (std::size_t j = 1; j < tails.size(); ++j) monotone = monotone && tails[j] <= tails[j - 1];
    rec.add_check("tail_monotone", monotone, tails.empty() ? 0.0 : tails.back(), 0.0);
    rec.wall_clock_s = seconds_since(t0);
    return rec;
}

RunRecord simulate_experiment(const ExperimentInputs& in, const Execution& exec) {
    const auto t0 = Clock::now();
    RunRecord rec = start_record("simulate", in);
    ParticleEnsemble ens = init_ensemble(in.solver, in.ic_a);
    const int steps = steps_between(ens.time(), in.horizon, in.solver.dt);
    auto& t = rec.series.axis_values;
    auto record = [&] {
        t.push_back(ens.time());
        rec.series.column("m2").push_back(second_moment_segment(ens));
        rec.series.column("m4").push_back(fourth_moment_segment(ens));
        double law_norm = 0.0;
        for (double m : site_law_m2root(ens, exec)) law_norm += m * m;
        rec.series.column("law_norm").push_back(std::sqrt(law_norm));
    };
    record();
    for (int s = 1; s <= steps; ++s) {
        step(ens, in.coeffs, in.model, exec);
        if (s % in.experiment.record_every == 0) record();
    }
    rec.add_summary("m2_final", rec.series.column("m2").back());
    rec.add_summary("m4_final", rec.series.column("m4").back());
    rec.wall_clock_s = seconds_since(t0);
    return rec;
}

RunRecord picard_experiment(const ExperimentInputs& in) {
    const auto t0 = Clock::now();
    RunRecord rec = start_record("picard-check", in);
    const int steps = steps_between(in.solver.t_start, in.horizon, in.solver.dt);
    const int iterations = in.experiment.picard_iterations > 0 ? in.experiment.picard_iterations : steps;
    const int K = in.solver.delay_steps();

    const EnsemblePath em = em_path(in.solver, in.ic_a, in.coeffs, in.model, steps);
    const PicardResult pic = picard_solve(in.solver, in.ic_a, in.coeffs, in.model, steps, iterations);

    double prefix_worst = 0.0;
    std::vector<double> axis, em_gap, successive;
    for (int n = 0; n <= iterations; ++n) {
        const auto& it = pic.iterates[static_cast<std::size_t>(n)];
        prefix_worst = std::max(prefix_worst, path_max_difference(it, em, K, std::min(n, steps)));
        axis.push_back(n);
        em_gap.push_back(path_max_difference(it, em, K, steps));
        successive.push_back(pic.successive_gap[static_cast<std::size_t>(n)]);
    }
    rec.series.axis = "iteration";
    rec.series.axis_values = axis;
    rec.series.column("em_gap") = em_gap;
    rec.series.column("successive_gap") = successive;
    rec.add_summary("steps", steps);
    rec.add_summary("iterations", iterations);
    rec.add_check("prefix_exact", prefix_worst == 0.0, prefix_worst, 0.0);
    rec.add_check("fixed_point", em_gap.back() <= 1e-12, em_gap.back(), 1e-12);
    rec.wall_clock_s = seconds_since(t0);
    return rec;
}

RunRecord run_simulate(const ScenarioConfig& sc, const Execution& exec) {
    return simulate_experiment(resolve_scenario(sc), exec);
}

RunRecord run_contraction(const ScenarioConfig& sc, const Execution& exec) {
    return contraction_experiment(resolve_scenario(sc), exec);
}

RunRecord run_mixing(const ScenarioConfig& sc, const Execution& exec) {
    return mixing_experiment(resolve_scenario(sc), exec);
}

RunRecord run_eps_sweep(const ScenarioConfig& sc, const Execution& exec) {
    ExperimentInputs in = resolve_scenario(sc);
    const BenchmarkFamily family = sc.benchmark;
    const PerturbationBlock pert = sc.perturbation;
    const CoefficientSet base = make_perturbed(family, 0.0, pert.rho_bar, pert.tau_bar).base;
    in.coeffs = base;
    return eps_sweep_experiment(in, base, [&](double eps) {
        return perturbed_coefficients(make_perturbed(family, eps, pert.rho_bar, pert.tau_bar));
    }, exec);
}

RunRecord run_absorption(const ScenarioConfig& sc, const Execution& exec) {
    return absorption_experiment(resolve_scenario(sc), exec);
}

RunRecord run_tails(const ScenarioConfig& sc, const Execution& exec) {
    return tails_experiment(resolve_scenario(sc), exec);
}

RunRecord run_certify(const ScenarioConfig& sc, std::size_t probe_samples) {
    const auto t0 = Clock::now();
    const ExperimentInputs in = resolve_scenario(sc);
    RunRecord rec = start_record("certify", in);
    const NormBounds b = scenario_bounds(sc);
    rec.add_summary("eta", b.eta);
    rec.add_summary("chi", b.chi);
    rec.add_summary("kappa", b.kappa);
    rec.add_summary("psi", b.psi);
    rec.add_summary("theta", b.theta);
    rec.add_summary("lambda", b.lambda);
    rec.add_summary("r", b.r);
    rec.add_summary("c1", b.c1);
    rec.add_summary("lambda_threshold_at_0", lambda_threshold(b, 0.0));
    rec.add_summary("contraction_threshold", contraction_threshold(b));

    DomainBox box;
    box.half_width = sc.solver.solver.half_width;
    const ProbeReport probes = probe_hypotheses(in.coeffs, probe_samples, box, sc.solver.solver.seed);
    for (const auto& p : probes.results) {
        if (p.required)
            rec.add_check("probe_" + p.name, p.violations == 0, static_cast<double>(p.violations), 0.0);
        else
            rec.add_summary("advisory_" + p.name + "_violations", static_cast<double>(p.violations));
    }
    rec.add_check("certificate_feasible", in.certificate->feasible, in.certificate->eps_star, 0.0);
    rec.wall_clock_s = seconds_since(t0);
    return rec;
}

RunRecord run_picard_check(const ScenarioConfig& sc) { return picard_experiment(resolve_scenario(sc)); }

RunRecord run_experiment(const std::string& kind, const ScenarioConfig& sc, const Execution& exec) {
    if (kind == "simulate") return run_simulate(sc, exec);
    if (kind == "contract") return run_contraction(sc, exec);
    if (kind == "mix") return run_mixing(sc, exec);
    if (kind == "sweep-eps") return run_eps_sweep(sc, exec);
    if (kind == "absorb") return run_absorption(sc, exec);
    if (kind == "tails") return run_tails(sc, exec);
    if (kind == "certify") return run_certify(sc);
    if (kind == "picard-check") return run_picard_check(sc);
    throw std::invalid_argument("unknown experiment kind '" + kind + "'");
}

}  // namespace mkv
