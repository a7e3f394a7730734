#pragma once

#include <span>
#include <vector>

#include "mkv/solver.hpp"

namespace mkv {

/// Empirical law on R with N atoms of equal mass, stored sorted.
class EmpiricalLaw1D {
public:
    explicit EmpiricalLaw1D(std::vector<double> samples);

    static EmpiricalLaw1D point_mass(double at, std::size_t n);

    std::size_t size() const { return samples_.size(); }
    std::span<const double> samples() const { return samples_; }
    double second_moment() const;

    bool operator==(const EmpiricalLaw1D&) const = default;

private:
    std::vector<double> samples_;
};

/// Exact W2 between equal-size empirical laws via the monotone (sorted) coupling.
double w2_1d(const EmpiricalLaw1D& a, const EmpiricalLaw1D& b);

/// W2(mu, delta_0) = sqrt of the second moment.
double w2_to_delta0(const EmpiricalLaw1D& a);

/// One empirical law per site -I..I, all of equal sample count.
class SiteLawFamily {
public:
    SiteLawFamily(int half_width, std::vector<EmpiricalLaw1D> laws);

    int half_width() const { return half_width_; }
    std::size_t samples_per_site() const { return laws_.front().size(); }
    const EmpiricalLaw1D& site(int i) const { return laws_[static_cast<std::size_t>(i + half_width_)]; }

private:
    int half_width_;
    std::vector<EmpiricalLaw1D> laws_;
};

/// rho(a, b) = sqrt(sum_i W2(a_i, b_i)^2)
double rho(const SiteLawFamily& a, const SiteLawFamily& b);

/// Per-site empirical laws across particles of the frame at time offset in [-r, 0].
SiteLawFamily law_of_ensemble(const ParticleEnsemble& ens, double offset = 0.0);

}  // namespace mkv
