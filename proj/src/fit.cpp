#include "mkv/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mkv {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_line: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        mx += x[j];
        my += y[j];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        sxx += (x[j] - mx) * (x[j] - mx);
        sxy += (x[j] - mx) * (y[j] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double e = y[j] - (fit.slope * x[j] + fit.intercept);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    fit.points = static_cast<int>(x.size());
    return fit;
}

RateFit fit_exponential_rate(std::span<const double> t, std::span<const double> y, double t_lo, double t_hi) {
    if (t.size() != y.size()) throw std::invalid_argument("fit_exponential_rate: length mismatch");
    std::vector<double> xs, ls;
    for (std::size_t j = 0; j < t.size(); ++j)
        if (t[j] >= t_lo && t[j] <= t_hi && y[j] > 0.0) {
            xs.push_back(t[j]);
            ls.push_back(std::log(y[j]));
        }
    RateFit out;
    out.line = fit_line(xs, ls);
    out.rate = -out.line.slope;
    return out;
}

LineFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_power_law: length mismatch");
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] > 0.0 && y[j] > 0.0) {
            lx.push_back(std::log(x[j]));
            ly.push_back(std::log(y[j]));
        }
    return fit_line(lx, ly);
}

}  // namespace mkv
