#include "mkv/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mkv {

EmpiricalLaw1D::EmpiricalLaw1D(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw std::invalid_argument("EmpiricalLaw1D: needs at least one sample");
    for (double x : samples_)
        if (!std::isfinite(x)) throw std::invalid_argument("EmpiricalLaw1D: non-finite sample");
    std::sort(samples_.begin(), samples_.end());
}

EmpiricalLaw1D EmpiricalLaw1D::point_mass(double at, std::size_t n) { return EmpiricalLaw1D(std::vector<double>(n, at)); }

double EmpiricalLaw1D::second_moment() const {
    double s = 0.0;
    for (double x : samples_) s += x * x;
    return s / static_cast<double>(samples_.size());
}

double w2_1d(const EmpiricalLaw1D& a, const EmpiricalLaw1D& b) {
    if (a.size() != b.size()) throw std::invalid_argument("w2_1d: sample counts differ; resample first");
    const auto x = a.samples();
    const auto y = b.samples();
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
    return std::sqrt(s / static_cast<double>(x.size()));
}

double w2_to_delta0(const EmpiricalLaw1D& a) { return std::sqrt(a.second_moment()); }

SiteLawFamily::SiteLawFamily(int half_width, std::vector<EmpiricalLaw1D> laws)
    : half_width_(half_width), laws_(std::move(laws)) {
    if (laws_.size() != static_cast<std::size_t>(2 * half_width + 1))
        throw DimensionError("SiteLawFamily: expected 2I+1 site laws");
    for (const auto& l : laws_)
        if (l.size() != laws_.front().size()) throw DimensionError("SiteLawFamily: unequal sample counts");
}

double rho(const SiteLawFamily& a, const SiteLawFamily& b) {
    if (a.half_width() != b.half_width() || a.samples_per_site() != b.samples_per_site())
        throw DimensionError("rho: family shapes differ");
    double s = 0.0;
    for (int i = -a.half_width(); i <= a.half_width(); ++i) {
        const double w = w2_1d(a.site(i), b.site(i));
        s += w * w;
    }
    return std::sqrt(s);
}

SiteLawFamily law_of_ensemble(const ParticleEnsemble& ens, double offset) {
    const int I = ens.half_width();
    std::vector<const LatticeVector*> frames;
    frames.reserve(static_cast<std::size_t>(ens.size()));
    for (int k = 0; k < ens.size(); ++k) frames.push_back(&ens.particle(k).at_offset(offset));
    std::vector<EmpiricalLaw1D> laws;
    laws.reserve(static_cast<std::size_t>(2 * I + 1));
    std::vector<double> column(static_cast<std::size_t>(ens.size()));
    for (int i = -I; i <= I; ++i) {
        for (std::size_t k = 0; k < frames.size(); ++k) column[k] = (*frames[k])[i];
        laws.emplace_back(column);
    }
    return SiteLawFamily(I, std::move(laws));
}

}  // namespace mkv
