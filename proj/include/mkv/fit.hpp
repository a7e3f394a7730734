#pragma once

#include <span>

namespace mkv {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root-mean-square residual
    int points = 0;
};

/// Ordinary least squares y = slope x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct RateFit {
    double rate = 0.0;  // -slope of log y against t
    LineFit line;
};

/// Exponential decay rate from points with t in [t_lo, t_hi] and y > 0.
RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi);

/// Log-log slope from points with x > 0 and y > 0.
LineFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace mkv
