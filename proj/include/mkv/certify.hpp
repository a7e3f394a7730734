#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkv/coefficients.hpp"

namespace mkv {

/// Coefficient norms plus the linear and delay parameters the dissipativity conditions use.
struct NormBounds {
    double eta = 0.0;
    double chi = 0.0;
    double kappa = 0.0;
    double psi = 0.0;
    double theta = 0.0;
    double c1 = 2.0;  // BDG constant
    double r = 1.0;
    double lambda = 1.0;
    double nu = 0.0;
    double alpha = 1.0;
    double p = 2.0;

    void validate() const;
    bool operator==(const NormBounds&) const = default;
};

NormBounds make_bounds(const CoefficientNorms& norms, double lambda, double nu, double delay, double c1 = 2.0);

/// Right-hand side of the absorption-rate condition at eps:
///   8|eta|(5+e^{2 eps r}) + [24|chi|^2(5+e^{2 eps r}) + 16|kappa|^2](3 + 8 c1^2)
double lambda_threshold(const NormBounds& b, double eps);

/// lambda - 4 eps > lambda_threshold(b, eps); eps must lie in (0, 1).
bool check_lambda(const NormBounds& b, double eps);

/// Largest eps in (0, 1) with check_lambda, within tol; nullopt when even eps -> 0+ fails.
std::optional<double> max_feasible_epsilon(const NormBounds& b, double tol = 1e-9);

/// R = 2|Theta| + 5|psi| + 9|chi|^2 (1 + 4 c1^2)
double contraction_threshold(const NormBounds& b);
/// lambda > contraction_threshold(b)
bool check_lambda_add(const NormBounds& b);
/// Supremum of eps allowed by 2 lambda - eps > 2 contraction_threshold(b); nullopt if none.
std::optional<double> contraction_epsilon_limit(const NormBounds& b);
/// Joint eps: min of max_feasible_epsilon and the contraction limit.
std::optional<double> max_epsilon_with_add(const NormBounds& b, double tol = 1e-9);

struct LipschitzConstants {
    double c1_tilde;
    double c2_tilde;
};

LipschitzConstants lipschitz_constants(const NormBounds& b);

/// 4[1 + 2 eps^{-1} e^{eps r}|psi|^2 + 3 eps^{-1} e^{eps r}|chi|^2 (1 + 4 c1^2)]
double contraction_constant(const NormBounds& b, double eps);

struct Certificate {
    bool feasible = false;
    bool lambda_ok = false;
    bool lambda_add_ok = false;
    double eps_star = 0.0;        // joint contraction rate of the coupled second moment
    double mixing_rate = 0.0;     // eps_star / 2, rate of the law distance
    double c1_tilde = 0.0;
    double c2_tilde = 0.0;
    double c3_tilde = 0.0;

    /// Flat key=value pairs in a fixed order.
    std::vector<std::pair<std::string, std::string>> fields() const;
};

Certificate build_certificate(const NormBounds& b, double tol = 1e-9);

}  // namespace mkv
