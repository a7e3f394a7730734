#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace mkv::testing {

/// Minimum-cost perfect assignment (Hungarian method, potentials form); returns the total cost.
inline double assignment_cost(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1), v(n + 1);
    std::vector<std::size_t> p(n + 1), way(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) minv[j] = cur, way[j] = j0;
                if (minv[j] < delta) delta = minv[j], j1 = j;
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) total += cost[p[j] - 1][j - 1];
    return total;
}

/// W2 between equal-weight empirical laws by optimal assignment on squared distance.
inline double w2_assignment(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<std::vector<double>> c(a.size(), std::vector<double>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i][j] = (a[i] - b[j]) * (a[i] - b[j]);
    return std::sqrt(assignment_cost(c) / static_cast<double>(a.size()));
}

/// Same quantity by enumerating every permutation (small n only).
inline double w2_permutations(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[perm[i]]) * (a[i] - b[perm[i]]);
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::sqrt(best / static_cast<double>(a.size()));
}

}  // namespace mkv::testing

#include <optional>
#include <random>

#include "mkv/certify.hpp"

namespace mkv::testing {

/// Largest grid point eps = j h in (0, 1) with lambda - 4 eps beating the absorption threshold,
/// evaluated straight from the inequality rather than through the library's threshold helper.
inline std::optional<double> grid_scan_epsilon(const NormBounds& b, double h = 1e-6) {
    const double bdg = 3.0 + 8.0 * b.c1 * b.c1;
    std::optional<double> best;
    const long n = static_cast<long>(std::floor(1.0 / h));
    for (long j = 1; j < n; ++j) {
        const double eps = static_cast<double>(j) * h;
        const double e = std::exp(2.0 * eps * b.r);
        const double rhs = 8.0 * b.eta * (5.0 + e) + (24.0 * b.chi * b.chi * (5.0 + e) + 16.0 * b.kappa * b.kappa) * bdg;
        if (b.lambda - 4.0 * eps > rhs)
            best = eps;
        else
            break;  // the slack is strictly decreasing in eps
    }
    return best;
}

inline NormBounds random_bounds(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    NormBounds b;
    b.eta = 0.2 * u(gen);
    b.chi = 0.05 * u(gen);
    b.kappa = 0.05 * u(gen);
    b.psi = 0.1 * u(gen);
    b.theta = 0.5 * u(gen);
    b.c1 = 3.0 * u(gen);
    b.r = 0.05 + 2.0 * u(gen);
    b.lambda = 0.5 + 20.0 * u(gen);
    return b;
}

}  // namespace mkv::testing
