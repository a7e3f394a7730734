#pragma once

#include <cmath>

#include "mkv/coefficients.hpp"
#include "mkv/solver.hpp"

namespace mkv::detail {

/// Euler-Maruyama increment for one site; every scheme adds this to its base value
/// so that EM, the reference stepper and Picard agree bit for bit.
inline double site_increment(const CoefficientSet& c, const ModelParams& model, int site, double t, double dt,
                             double left, double centre, double right, double delayed, double m2root,
                             double forcing, double dW) {
    const double laplacian = left - 2.0 * centre + right;
    const double drift =
        model.nu * laplacian - model.lambda * centre + c.drift(site, t, centre, delayed, m2root) + forcing;
    const double diffusion = c.diffusion(site, t, centre, delayed, m2root);
    return dt * drift + diffusion * dW;
}

/// m2root per site from per-particle frames, summed in particle order.
template <class FrameOf>
double site_m2root(int particles, std::size_t slot, FrameOf&& frame_of) {
    double s = 0.0;
    for (int k = 0; k < particles; ++k) {
        const double x = frame_of(k).values()[slot];
        s += x * x;
    }
    return std::sqrt(s / particles);
}

}  // namespace mkv::detail
