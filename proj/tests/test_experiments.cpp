#include <doctest.h>

#include <cmath>

#include "mkv/experiments.hpp"
#include "support.hpp"

using namespace mkv;
using mkv::testing::linear_set;

namespace {

InitialCondition spike(double scale) {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::constant;
    ic.scale = scale;
    ic.radius = 0;
    return ic;
}

ExperimentInputs linear_inputs(double dt, double lambda, double sigma) {
    ExperimentInputs in;
    in.solver.half_width = 1;
    in.solver.particles = 4;
    in.solver.dt = dt;
    in.solver.delay = 0.1;
    in.solver.seed = 3;
    in.model = {0.0, lambda};
    in.coeffs = linear_set(sigma);
    in.ic_a = spike(1.0);
    in.ic_b = InitialCondition{};
    in.experiment.record_every = 1;
    return in;
}

ScenarioConfig small_scenario() {
    ScenarioConfig sc;
    sc.solver.solver.half_width = 4;
    sc.solver.solver.particles = 32;
    sc.solver.solver.delay = 0.05;
    sc.solver.horizon = 1.0;
    sc.experiment.fit_end = 1.0;
    sc.experiment.fit_start = 0.2;
    return sc;
}

}  // namespace

TEST_CASE("linear single-site contraction rate is 2 lambda") {
    ExperimentInputs in = linear_inputs(0.005, 1.0, 0.7);
    in.horizon = 4.0;
    in.experiment.fit_start = 0.5;
    in.experiment.fit_end = 4.0;
    const RunRecord rec = contraction_experiment(in);
    const FitEntry& f = rec.fit("D");
    CHECK(std::abs(f.rate - 2.0) < 0.05 * 2.0);
    CHECK(rec.check("rate_vs_certificate_informational").passed);
    CHECK(rec.picture == "forward-autonomous");
}

TEST_CASE("mixing with identical initial laws has zero distance tracks") {
    ScenarioConfig sc = small_scenario();
    sc.initial_b = sc.initial_a;
    const RunRecord rec = run_mixing(sc);
    for (double x : rec.series.column("coupling_rms")) CHECK(x == 0.0);
    for (double x : rec.series.column("rho")) CHECK(x == 0.0);
    CHECK(rec.check("rho_below_coupling").passed);
}

TEST_CASE("mixing tracks on a small benchmark run") {
    const RunRecord rec = run_mixing(small_scenario());
    const auto& rms = rec.series.column("coupling_rms");
    const auto& r = rec.series.column("rho");
    for (std::size_t j = 0; j < rms.size(); ++j) CHECK(r[j] <= rms[j] * (1.0 + 1e-12));
    CHECK(rec.check("rho_below_coupling").passed);
    CHECK(rec.fit("coupling_rms").rate > 0.0);

    ScenarioConfig periodic = small_scenario();
    periodic.benchmark.periodic_forcing = true;
    CHECK_THROWS_AS(run_mixing(periodic), std::invalid_argument);
}

TEST_CASE("eps sweep on a small benchmark run") {
    ScenarioConfig sc = small_scenario();
    sc.experiment.eps_list = {0.16, 0.0, 0.04, 0.08};
    const RunRecord rec = run_eps_sweep(sc);
    CHECK(rec.series.axis == "eps");
    CHECK(rec.series.axis_values == std::vector<double>{0.0, 0.04, 0.08, 0.16});
    CHECK(rec.series.column("mse")[0] == 0.0);
    CHECK(rec.check("mse_zero_at_zero").passed);
    CHECK(rec.check("mse_monotone").passed);
    CHECK(rec.check("loglog_slope").passed);
}

TEST_CASE("absorption under linear decay matches the closed form") {
    ExperimentInputs in = linear_inputs(0.01, 1.0, 0.0);
    in.horizon = 10.0;
    in.ic_a = InitialCondition{};
    in.ic_b = spike(10.0);
    in.experiment.agreement_abs_tol = 1e-8;
    const RunRecord rec = absorption_experiment(in);
    CHECK(rec.check("absorbed").passed);
    CHECK(rec.check("band_finite").passed);
    for (double x : rec.series.column("m4_a")) CHECK(x == 0.0);

    // the segment sup sits at the oldest frame: m4_b(k) = 1e4 (1 - dt)^{4 (k - K)}
    const double dt = in.solver.dt;
    const int K = in.solver.delay_steps();
    int k = K;
    while (1e4 * std::pow(1.0 - dt, 4.0 * (k - K)) > in.experiment.agreement_abs_tol) ++k;
    CHECK(rec.scalar("absorption_time") == doctest::Approx(k * dt).epsilon(1e-9));
    // continuous-time estimate (4 ln 10 + ln(1/tol)) / (4 lambda), shifted by the delay
    const double continuous = (4.0 * std::log(10.0) + std::log(1e8)) / 4.0 + in.solver.delay;
    CHECK(rec.scalar("absorption_time") == doctest::Approx(continuous).epsilon(0.02));
}

TEST_CASE("absorption band is symmetric in the two initial conditions") {
    ScenarioConfig sc = small_scenario();
    sc.solver.horizon = 3.0;
    sc.initial_a = {InitialCondition::Kind::zero, 0.0, -1, 0};
    sc.initial_b = {InitialCondition::Kind::constant, 10.0, 0, 0};
    const RunRecord ab = run_absorption(sc);
    std::swap(sc.initial_a, sc.initial_b);
    const RunRecord ba = run_absorption(sc);
    CHECK(ab.check("absorbed").passed);
    CHECK(ab.scalar("band_lo") == ba.scalar("band_lo"));
    CHECK(ab.scalar("band_hi") == ba.scalar("band_hi"));
    CHECK(ab.scalar("absorption_time") == ba.scalar("absorption_time"));
    CHECK(ab.series.column("m4_a") == ba.series.column("m4_b"));
}

TEST_CASE("agreement_start") {
    const std::vector<double> a{10, 5, 1.0, 1.01, 1.0}, b{0, 0, 1.02, 1.0, 1.0};
    CHECK(agreement_start(a, b, 0.05, 0.0) == std::optional<std::size_t>(2));
    CHECK(agreement_start(a, b, 0.001, 0.0) == std::optional<std::size_t>(4));
    const std::vector<double> c{1, 2}, d{1, 3};
    CHECK_FALSE(agreement_start(c, d, 0.01, 0.0));
    CHECK(agreement_start(c, d, 0.01, 1.0) == std::optional<std::size_t>(0));
    CHECK_THROWS_AS(agreement_start(c, a, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("tails vanish without noise or forcing") {
    ExperimentInputs in = linear_inputs(0.01, 1.0, 0.0);
    in.solver.half_width = 8;
    in.horizon = 0.5;
    in.ic_a = InitialCondition{};
    in.experiment.tail_indices = {0, 1, 4, 9};
    const RunRecord rec = tails_experiment(in);
    for (double x : rec.series.column("tail_mass")) CHECK(x == 0.0);
    CHECK(rec.check("tail_monotone").passed);
    CHECK(rec.scalar("tail_fraction_n9") == 0.0);
}

TEST_CASE("tails decrease in n on a benchmark run") {
    ScenarioConfig sc = small_scenario();
    sc.solver.solver.half_width = 12;
    sc.benchmark.kappa_radius = 2;
    sc.experiment.tail_indices = {13, 0, 4, 8, 2};
    const RunRecord rec = run_tails(sc);
    CHECK(rec.series.axis_values == std::vector<double>{0, 2, 4, 8, 13});
    const auto& t = rec.series.column("tail_mass");
    for (std::size_t j = 1; j < t.size(); ++j) CHECK(t[j] <= t[j - 1]);
    CHECK(t.back() == 0.0);
    CHECK(rec.scalar("tail_fraction_n0") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("picard experiment") {
    ScenarioConfig sc = small_scenario();
    sc.solver.solver.particles = 4;
    sc.solver.horizon = 0.2;
    const RunRecord rec = run_picard_check(sc);
    CHECK(rec.check("prefix_exact").passed);
    CHECK(rec.check("fixed_point").passed);
    CHECK(rec.scalar("iterations") == 20);
}

TEST_CASE("certify record") {
    const RunRecord rec = run_certify(load_scenario(std::string(MKV_SCENARIO_DIR) + "/contraction.ini"), 2000);
    CHECK(rec.all_checks_passed());
    CHECK(rec.certificate);
    CHECK(rec.check("certificate_feasible").passed);
    CHECK(rec.check("probe_drift_dissipativity").passed);
    CHECK(rec.scalar("lambda") == 6.0);

    ScenarioConfig weak = small_scenario();
    weak.model.lambda = 1.0;
    const RunRecord bad = run_certify(weak, 100);
    CHECK_FALSE(bad.check("certificate_feasible").passed);
}

TEST_CASE("records are reproducible and independent of the thread count") {
    const ScenarioConfig sc = small_scenario();
    for (const char* kind : {"simulate", "contract", "mix"}) {
        INFO(kind);
        const RunRecord one = run_experiment(kind, sc, Execution{1});
        const RunRecord again = run_experiment(kind, sc, Execution{1});
        const RunRecord four = run_experiment(kind, sc, Execution{4});
        CHECK(render_record_lines(one, false) == render_record_lines(again, false));
        CHECK(render_record_lines(one, false) == render_record_lines(four, false));
        CHECK(render_csv(one.series) == render_csv(four.series));
    }
    CHECK_THROWS_AS(run_experiment("bogus", sc), std::invalid_argument);
}
