#include "mkv/certify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mkv/records.hpp"

namespace mkv {

void NormBounds::validate() const {
    if (!(eta >= 0 && chi >= 0 && kappa >= 0 && psi >= 0 && theta >= 0 && c1 >= 0 && nu >= 0))
        throw std::invalid_argument("NormBounds: norms and constants must be non-negative");
    if (!(lambda > 0.0)) throw std::invalid_argument("NormBounds: lambda must be > 0");
    if (!(r > 0.0)) throw std::invalid_argument("NormBounds: r must be > 0");
    if (!(p >= 2.0)) throw std::invalid_argument("NormBounds: p must be >= 2");
}

NormBounds make_bounds(const CoefficientNorms& n, double lambda, double nu, double delay, double c1) {
    NormBounds b;
    b.eta = n.eta;
    b.chi = n.chi;
    b.kappa = n.kappa;
    b.psi = n.psi;
    b.theta = n.theta;
    b.alpha = n.alpha;
    b.p = n.p;
    b.c1 = c1;
    b.r = delay;
    b.lambda = lambda;
    b.nu = nu;
    b.validate();
    return b;
}

double lambda_threshold(const NormBounds& b, double eps) {
    const double delay_factor = 5.0 + std::exp(2.0 * eps * b.r);
    const double bdg = 3.0 + 8.0 * b.c1 * b.c1;
    return 8.0 * b.eta * delay_factor + (24.0 * b.chi * b.chi * delay_factor + 16.0 * b.kappa * b.kappa) * bdg;
}

bool check_lambda(const NormBounds& b, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("check_lambda: eps must lie in (0, 1)");
    return b.lambda - 4.0 * eps > lambda_threshold(b, eps);
}

std::optional<double> max_feasible_epsilon(const NormBounds& b, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("max_feasible_epsilon: tol must be > 0");
    b.validate();
    // lambda - 4 eps - threshold(eps) is strictly decreasing, so the feasible set is (0, eps_max).
    auto slack = [&](double eps) { return b.lambda - 4.0 * eps - lambda_threshold(b, eps); };
    if (!(slack(0.0) > 0.0)) return std::nullopt;
    double lo = 0.0;
    double hi = 1.0;
    if (slack(hi) > 0.0) return 1.0 - tol;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (slack(mid) > 0.0 ? lo : hi) = mid;
    }
    if (lo == 0.0) lo = 0.5 * hi;  // tol coarser than eps_max itself
    return lo;
}

double contraction_threshold(const NormBounds& b) {
    return 2.0 * b.theta + 5.0 * b.psi + 9.0 * b.chi * b.chi * (1.0 + 4.0 * b.c1 * b.c1);
}

bool check_lambda_add(const NormBounds& b) { return b.lambda > contraction_threshold(b); }

std::optional<double> contraction_epsilon_limit(const NormBounds& b) {
    const double limit = 2.0 * b.lambda - 2.0 * contraction_threshold(b);
    if (!(limit > 0.0)) return std::nullopt;
    return limit;
}

std::optional<double> max_epsilon_with_add(const NormBounds& b, double tol) {
    const auto eps = max_feasible_epsilon(b, tol);
    const auto limit = contraction_epsilon_limit(b);
    if (!eps || !limit) return std::nullopt;
    // the contraction condition is strict: step just inside it when it binds
    return std::min(*eps, *limit * (1.0 - 1e-12));
}

LipschitzConstants lipschitz_constants(const NormBounds& b) {
    const double bdg = 1.0 + 2.0 * b.c1 * b.c1;
    return {3.0 + 8.0 * b.r * b.psi * b.psi + 6.0 * b.r * b.chi * b.chi * bdg,
            4.0 * b.theta + 18.0 * b.psi + 18.0 * b.chi * b.chi * bdg};
}

double contraction_constant(const NormBounds& b, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("contraction_constant: eps must be > 0");
    const double delay = std::exp(eps * b.r) / eps;
    return 4.0 * (1.0 + 2.0 * delay * b.psi * b.psi + 3.0 * delay * b.chi * b.chi * (1.0 + 4.0 * b.c1 * b.c1));
}

Certificate build_certificate(const NormBounds& b, double tol) {
    Certificate c;
    const auto eps_abs = max_feasible_epsilon(b, tol);
    c.lambda_ok = eps_abs.has_value();
    c.lambda_add_ok = check_lambda_add(b);
    const auto lip = lipschitz_constants(b);
    c.c1_tilde = lip.c1_tilde;
    c.c2_tilde = lip.c2_tilde;
    const auto joint = max_epsilon_with_add(b, tol);
    c.feasible = c.lambda_ok && c.lambda_add_ok && joint.has_value();
    if (c.feasible) {
        c.eps_star = *joint;
    } else if (eps_abs) {
        c.eps_star = *eps_abs;  // informational only
    }
    if (c.eps_star > 0.0) {
        c.mixing_rate = 0.5 * c.eps_star;
        c.c3_tilde = contraction_constant(b, c.eps_star);
    }
    return c;
}

std::vector<std::pair<std::string, std::string>> Certificate::fields() const {
    return {{"feasible", format_bool(feasible)},
            {"lambda_ok", format_bool(lambda_ok)},
            {"lambda_add_ok", format_bool(lambda_add_ok)},
            {"eps_star", format_double(eps_star)},
            {"mixing_rate", format_double(mixing_rate)},
            {"c1_tilde", format_double(c1_tilde)},
            {"c2_tilde", format_double(c2_tilde)},
            {"c3_tilde", format_double(c3_tilde)}};
}

}  // namespace mkv
