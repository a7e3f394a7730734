#include "mkv/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mkv {

double eval_drift(const CoefficientSet& set, int site, double t, double u, double v, double m2root) {
    return set.drift(site, t, u, v, m2root);
}

double eval_diffusion(const CoefficientSet& set, int site, double t, double u, double v, double m2root) {
    return set.diffusion(site, t, u, v, m2root);
}

double eval_forcing(const CoefficientSet& set, int site, double t) { return set.forcing(site, t); }

double weight_l2_norm(double q, int radius) {
    if (radius >= 0) {
        double s = 0.0;
        for (int i = -radius; i <= radius; ++i) s += std::pow(1.0 + std::abs(i), -2.0 * q);
        return std::sqrt(s);
    }
    // sum_{i in Z} (1+|i|)^{-2q} = 2 zeta(2q) - 1
    return std::sqrt(2.0 * std::riemann_zeta(2.0 * q) - 1.0);
}

double BenchmarkFamily::weight(int site) const { return std::pow(1.0 + std::abs(site), -q); }

double BenchmarkFamily::g_profile(int site) const { return std::abs(site) <= g_radius ? g_bar : 0.0; }

void BenchmarkFamily::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("benchmark: alpha must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("benchmark: beta must be >= 0");
    if (!(p >= 2.0)) throw std::invalid_argument("benchmark: p must be >= 2");
    if (!(psi_bar >= 0.0 && chi_bar >= 0.0 && kappa_bar >= 0.0))
        throw std::invalid_argument("benchmark: psi_bar, chi_bar, kappa_bar must be >= 0");
    if (!(q > 0.5)) throw std::invalid_argument("benchmark: q must be > 1/2 for an l2 weight");
}

CoefficientSet BenchmarkFamily::coefficients() const {
    validate();
    const BenchmarkFamily fam = *this;
    const double law = mean_field ? 1.0 : 0.0;

    CoefficientSet set;
    set.drift = [fam, law](int site, double, double u, double v, double m) {
        const double poly = fam.p == 2.0 ? u : u * std::pow(std::abs(u), fam.p - 2.0);
        return -fam.alpha * poly - fam.beta * u + fam.psi_bar * fam.weight(site) * (std::sin(v) + law * m);
    };
    set.diffusion = [fam, law](int site, double, double u, double v, double m) {
        const double w = fam.weight(site);
        const double kappa = (fam.kappa_radius < 0 || std::abs(site) <= fam.kappa_radius) ? fam.kappa_bar * w : 0.0;
        return fam.chi_bar * w * (u + std::sin(v) + law * m) / 3.0 + kappa;
    };
    if (periodic_forcing)
        set.forcing = [fam](int site, double t) { return fam.g_profile(site) * (1.0 + std::sin(t)); };
    else
        set.forcing = [fam](int site, double) { return fam.g_profile(site); };

    set.profiles.eta = [fam](int site, double) { return 2.0 * fam.psi_bar * fam.weight(site); };
    set.profiles.psi = [fam](int site, double) { return fam.psi_bar * fam.weight(site); };
    set.profiles.theta = [](int, double) { return 0.0; };
    set.profiles.chi = [fam](int site, double) { return fam.chi_bar * fam.weight(site); };
    set.profiles.kappa = [fam](int site, double) {
        return (fam.kappa_radius < 0 || std::abs(site) <= fam.kappa_radius) ? fam.kappa_bar * fam.weight(site) : 0.0;
    };
    set.profiles.alpha = alpha;
    set.profiles.p = p;

    const double w_norm = weight_l2_norm(q);
    set.norms.eta = 2.0 * psi_bar * w_norm;
    set.norms.psi = psi_bar * w_norm;
    set.norms.theta = 0.0;
    set.norms.chi = chi_bar * w_norm;
    set.norms.kappa = kappa_bar * weight_l2_norm(q, kappa_radius);
    set.norms.alpha = alpha;
    set.norms.p = p;

    set.time_dependent = periodic_forcing;
    set.law_dependent = mean_field && (psi_bar > 0.0 || chi_bar > 0.0);
    return set;
}

CoefficientSet adversarial_coefficients(const BenchmarkFamily& base) {
    CoefficientSet set = base.coefficients();
    const BenchmarkFamily fam = base;
    set.drift = [fam](int site, double, double u, double v, double m) {
        const double poly = fam.p == 2.0 ? u : u * std::pow(std::abs(u), fam.p - 2.0);
        return fam.alpha * poly + fam.psi_bar * fam.weight(site) * (std::sin(v) + m);
    };
    return set;
}

double perturbation_shape(double u, double v, double m2root) { return std::sin(u) + std::sin(v) + m2root; }

PerturbedFamily make_perturbed(const BenchmarkFamily& family, double eps, double rho_bar, double tau_bar) {
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("perturbed family: eps must lie in [0, 1)");
    BenchmarkFamily law_free = family;
    law_free.mean_field = false;
    PerturbedFamily fam;
    fam.base = law_free.coefficients();
    fam.eps = eps;
    fam.drift_weight = [family, rho_bar](int site, double) { return rho_bar * family.weight(site); };
    fam.diffusion_weight = [family, tau_bar](int site, double) { return tau_bar * family.weight(site); };
    return fam;
}

PerturbedValue eval_perturbed(const PerturbedFamily& fam, int site, double t, double u, double v, double m2root) {
    const double h = perturbation_shape(u, v, m2root);
    return {fam.base.drift(site, t, u, v, m2root) + fam.eps * fam.drift_weight(site, t) * h,
            fam.base.diffusion(site, t, u, v, m2root) + fam.eps * fam.diffusion_weight(site, t) * h};
}

CoefficientSet perturbed_coefficients(const PerturbedFamily& fam) {
    CoefficientSet set = fam.base;
    set.drift = [fam](int site, double t, double u, double v, double m) {
        return eval_perturbed(fam, site, t, u, v, m).drift;
    };
    set.diffusion = [fam](int site, double t, double u, double v, double m) {
        return eval_perturbed(fam, site, t, u, v, m).diffusion;
    };
    // |d h / d u| <= 1 and h is 1-Lipschitz in v and m; u h <= 2u^2 + v^2/2 + m^2/2.
    const double eps = fam.eps;
    const auto base = fam.base.profiles;
    set.profiles.psi = [base, fam, eps](int i, double t) { return base.psi(i, t) + eps * fam.drift_weight(i, t); };
    set.profiles.theta = [base, fam, eps](int i, double t) { return base.theta(i, t) + eps * fam.drift_weight(i, t); };
    set.profiles.eta = [base, fam, eps](int i, double t) { return base.eta(i, t) + 2.0 * eps * fam.drift_weight(i, t); };
    set.profiles.chi = [base, fam, eps](int i, double t) { return base.chi(i, t) + eps * fam.diffusion_weight(i, t); };
    set.law_dependent = eps > 0.0 || fam.base.law_dependent;
    return set;
}

// ---- probes ------------------------------------------------------------------

bool ProbeReport::passed() const {
    return std::all_of(results.begin(), results.end(),
                       [](const ProbeResult& r) { return !r.required || r.violations == 0; });
}

const ProbeResult& ProbeReport::find(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return r;
    throw std::out_of_range("probe report has no entry " + name);
}

namespace {

constexpr double kRoundoff = 1e-12;

struct ProbeAccumulator {
    ProbeResult result;

    explicit ProbeAccumulator(std::string name, bool required = true) {
        result.name = std::move(name);
        result.required = required;
        result.worst_excess = -std::numeric_limits<double>::infinity();
    }

    void record(double lhs, double rhs, const ProbePoint& at, double allowance = 0.0) {
        ++result.samples;
        const double excess = lhs - rhs;
        if (excess > result.worst_excess) {
            result.worst_excess = excess;
            result.witness = at;
        }
        if (excess > allowance + kRoundoff * (1.0 + std::abs(lhs) + std::abs(rhs))) ++result.violations;
    }
};

}  // namespace

ProbeReport probe_hypotheses(const CoefficientSet& set, std::size_t sample_count, const DomainBox& box,
                             std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("probe_hypotheses: sample_count must be >= 1");
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> site_dist(-box.half_width, box.half_width);
    std::uniform_real_distribution<double> u_dist(-box.u_max, box.u_max);
    std::uniform_real_distribution<double> v_dist(-box.v_max, box.v_max);
    std::uniform_real_distribution<double> m_dist(0.0, box.m_max);
    std::uniform_real_distribution<double> t_dist(box.t_min, box.t_max);

    const auto& prof = set.profiles;
    ProbeAccumulator dissipativity("drift_dissipativity");
    ProbeAccumulator law_lipschitz("drift_law_lipschitz");
    ProbeAccumulator monotone("drift_monotone");
    ProbeAccumulator sigma_lipschitz("diffusion_lipschitz");
    ProbeAccumulator sigma_growth("diffusion_growth");
    ProbeAccumulator sigma_origin("diffusion_origin");
    ProbeAccumulator drift_growth("drift_growth", /*required=*/false);

    constexpr double h = 1e-5;
    constexpr double growth_margin = 1e-3;
    for (std::size_t s = 0; s < sample_count; ++s) {
        const int i = site_dist(gen);
        const double t = t_dist(gen);
        const double u = u_dist(gen), v = v_dist(gen), m = m_dist(gen);
        const double u2 = u_dist(gen), v2 = v_dist(gen), m2 = m_dist(gen);
        const ProbePoint at{i, t, u, v, m};

        const double f = set.drift(i, t, u, v, m);
        const double eta = prof.eta(i, t);
        dissipativity.record(u * f, -prof.alpha * std::pow(std::abs(u), prof.p) + eta * (1.0 + u * u + v * v + m * m),
                             at);

        const double f_law = set.drift(i, t, u, v2, m2);
        law_lipschitz.record(std::abs(f - f_law), prof.psi(i, t) * (std::abs(v - v2) + std::abs(m - m2)), at);

        const double f_plus = set.drift(i, t, u + h, v, m);
        const double f_minus = set.drift(i, t, u - h, v, m);
        const double fd = (f_plus - f_minus) / (2.0 * h);
        const double fd_roundoff = 4.0 * std::numeric_limits<double>::epsilon() *
                                   (std::abs(f_plus) + std::abs(f_minus)) / (2.0 * h);
        monotone.record(fd, prof.theta(i, t), at, fd_roundoff);

        const double sigma = set.diffusion(i, t, u, v, m);
        const double sigma2 = set.diffusion(i, t, u2, v2, m2);
        const double chi = prof.chi(i, t);
        const double kappa = prof.kappa(i, t);
        sigma_lipschitz.record(std::abs(sigma - sigma2),
                               chi * (std::abs(u - u2) + std::abs(v - v2) + std::abs(m - m2)), at);
        sigma_growth.record(std::abs(sigma), chi * (std::abs(u) + std::abs(v) + m) + kappa, at);
        sigma_origin.record(std::abs(set.diffusion(i, t, 0.0, 0.0, 0.0) - kappa), 0.0, {i, t, 0.0, 0.0, 0.0});

        const double phi = std::abs(set.drift(i, t, 0.0, 0.0, 0.0));
        const double gamma = std::max({prof.psi(i, t), prof.theta(i, t), phi}) + growth_margin;
        drift_growth.record(std::abs(f), gamma * (1.0 + std::abs(u) + std::abs(v) + m), at);
    }

    ProbeReport report;
    for (auto* acc : {&dissipativity, &law_lipschitz, &monotone, &sigma_lipschitz, &sigma_growth, &sigma_origin,
                      &drift_growth})
        report.results.push_back(acc->result);
    return report;
}

}  // namespace mkv
