#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mkv {

/// Per-site coefficient map (site, t, u, v, m2root) -> value. `v` is the delayed
/// value u_i(t - r) and `m2root` the W2 distance of the site law to delta_0.
using SiteMap = std::function<double(int site, double t, double u, double v, double m2root)>;
/// Per-site profile (site, t) -> value.
using SiteProfile = std::function<double(int site, double t)>;

/// L-infinity-in-time l2 norms of the hypothesis profiles, computed over the full lattice Z.
struct CoefficientNorms {
    double eta = 0.0;
    double chi = 0.0;
    double kappa = 0.0;
    double psi = 0.0;
    double theta = 0.0;
    double alpha = 1.0;
    double p = 2.0;

    bool operator==(const CoefficientNorms&) const = default;
};

/// Site profiles that the hypothesis inequalities are stated against.
struct HypothesisProfiles {
    SiteProfile eta;    // dissipativity weight
    SiteProfile psi;    // drift Lipschitz weight in (v, law)
    SiteProfile theta;  // one-sided bound on d f / d u
    SiteProfile chi;    // diffusion Lipschitz weight
    SiteProfile kappa;  // diffusion at the origin
    double alpha = 1.0;
    double p = 2.0;
};

struct CoefficientSet {
    SiteMap drift;
    SiteMap diffusion;
    SiteProfile forcing;
    HypothesisProfiles profiles;
    CoefficientNorms norms;
    bool time_dependent = false;
    bool law_dependent = true;
};

double eval_drift(const CoefficientSet& set, int site, double t, double u, double v, double m2root);
double eval_diffusion(const CoefficientSet& set, int site, double t, double u, double v, double m2root);
double eval_forcing(const CoefficientSet& set, int site, double t);

/// Benchmark instance:
///   f_i = -alpha u|u|^{p-2} - beta u + psi_bar w_i (sin v + m)
///   sigma_i = chi_bar w_i (u + sin v + m) / 3 + kappa_bar w_i [|i| <= kappa_radius]
///   g_i(t) = g_bar [|i| <= g_radius] (1 + sin t)   (constant g_bar when not periodic)
/// with spatial weight w_i = (1 + |i|)^{-q}.
struct BenchmarkFamily {
    double alpha = 1.0;
    double beta = 0.5;
    double p = 4.0;
    double psi_bar = 0.02;
    double chi_bar = 0.01;
    double kappa_bar = 0.02;
    int kappa_radius = -1;  // negative: no cutoff
    double g_bar = 0.5;
    int g_radius = 2;
    double q = 1.0;
    bool periodic_forcing = false;
    bool mean_field = true;

    bool operator==(const BenchmarkFamily&) const = default;

    double weight(int site) const;
    double g_profile(int site) const;
    void validate() const;
    CoefficientSet coefficients() const;
};

/// sqrt(sum over Z of (1+|i|)^{-2q}); restricted to |i| <= radius when radius >= 0.
double weight_l2_norm(double q, int radius = -1);

/// Benchmark with the drift sign flipped on the polynomial term (f = +u|u|^{p-2}),
/// used to confirm the probes detect a dissipativity failure.
CoefficientSet adversarial_coefficients(const BenchmarkFamily& base);

/// Distribution-independent base plus an eps-scaled perturbation
///   f^eps = f + eps rho_i(t) h(u, v, m),  sigma^eps = sigma + eps tau_i(t) h(u, v, m)
/// with h = sin u + sin v + m, so |h| <= |u| + |v| + m.
struct PerturbedFamily {
    CoefficientSet base;
    double eps = 0.0;
    SiteProfile drift_weight;
    SiteProfile diffusion_weight;
};

/// Perturbed family over the law-free benchmark with weights rho_bar w_i and tau_bar w_i.
PerturbedFamily make_perturbed(const BenchmarkFamily& family, double eps, double rho_bar, double tau_bar);

struct PerturbedValue {
    double drift;
    double diffusion;
};

double perturbation_shape(double u, double v, double m2root);
PerturbedValue eval_perturbed(const PerturbedFamily& fam, int site, double t, double u, double v, double m2root);

/// CoefficientSet view of a perturbed family, for driving the solver.
CoefficientSet perturbed_coefficients(const PerturbedFamily& fam);

// ---- hypothesis probes -------------------------------------------------------

struct DomainBox {
    int half_width = 8;
    double u_max = 5.0;
    double v_max = 5.0;
    double m_max = 5.0;
    double t_min = 0.0;
    double t_max = 10.0;
};

struct ProbePoint {
    int site = 0;
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;
    double m = 0.0;
};

struct ProbeResult {
    std::string name;
    bool required = true;  // advisory probes do not affect passed()
    std::size_t samples = 0;
    std::size_t violations = 0;
    double worst_excess = 0.0;  // max over samples of lhs - rhs (negative means slack)
    ProbePoint witness;
};

struct ProbeReport {
    std::vector<ProbeResult> results;

    bool passed() const;
    const ProbeResult& find(const std::string& name) const;
};

/// Samples the hypothesis inequalities uniformly over `box`; deterministic in seed.
ProbeReport probe_hypotheses(const CoefficientSet& set, std::size_t sample_count, const DomainBox& box,
                             std::uint64_t seed);

}  // namespace mkv
