#pragma once

#include <random>
#include <vector>

#include "mkv/lattice.hpp"

namespace mkv::testing {

inline LatticeVector random_vector(std::mt19937_64& gen, int half_width, double scale = 1.0) {
    std::normal_distribution<double> z(0.0, scale);
    std::vector<double> v(static_cast<std::size_t>(2 * half_width + 1));
    for (double& x : v) x = z(gen);
    return LatticeVector(half_width, std::move(v));
}

/// Random vector vanishing at |i| = I.
inline LatticeVector random_interior(std::mt19937_64& gen, int half_width) {
    LatticeVector u = random_vector(gen, half_width);
    u[-half_width] = 0.0;
    u[half_width] = 0.0;
    return u;
}

/// Small integers, so sums are exact in floating point.
inline LatticeVector random_integer_vector(std::mt19937_64& gen, int half_width) {
    std::uniform_int_distribution<int> d(-50, 50);
    LatticeVector u(half_width);
    for (int i = -half_width; i <= half_width; ++i) u[i] = d(gen);
    return u;
}

inline SegmentBuffer random_segment(std::mt19937_64& gen, int half_width, double delay, double dt) {
    const int k = delay_steps(delay, dt);
    std::vector<LatticeVector> frames;
    for (int j = 0; j <= k; ++j) frames.push_back(random_vector(gen, half_width));
    return SegmentBuffer(delay, dt, std::move(frames));
}

}  // namespace mkv::testing

#include "mkv/coefficients.hpp"

namespace mkv::testing {

/// f = 0, g = 0 and constant diffusion sigma: the linear reference system.
inline CoefficientSet linear_set(double sigma) {
    CoefficientSet c;
    c.drift = [](int, double, double, double, double) { return 0.0; };
    c.diffusion = [sigma](int, double, double, double, double) { return sigma; };
    c.forcing = [](int, double) { return 0.0; };
    auto zero = [](int, double) { return 0.0; };
    c.profiles = {zero, zero, zero, zero, [sigma](int, double) { return sigma; }, 1.0, 2.0};
    c.law_dependent = false;
    return c;
}

}  // namespace mkv::testing
