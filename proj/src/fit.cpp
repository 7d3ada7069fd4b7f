#include "heis/fit.hpp"

#include "heis/errors.hpp"

#include <algorithm>
#include <cmath>

namespace heis {

SweepResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ConfigError("abscissae and values differ in length");
    SweepResult r;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0)) throw ConfigError("abscissae must be positive");
        if (!(y[i] > 0)) {
            ++r.dropped;
            continue;
        }
        r.abscissae.push_back(x[i]);
        r.values.push_back(y[i]);
    }
    const std::size_t n = r.values.size();
    if (n < 3) throw ConfigError("fit needs at least 3 usable points, have " + std::to_string(n));

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(r.abscissae[i]);
        my += std::log(r.values[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(r.abscissae[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(r.values[i]) - my);
    }
    if (sxx == 0) throw ConfigError("abscissae must not all coincide");
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        const double res = std::log(r.values[i]) - (r.intercept + r.slope * std::log(r.abscissae[i]));
        r.max_residual = std::max(r.max_residual, std::abs(res));
    }
    return r;
}

SweepResult fit_exponent(const std::vector<std::pair<double, double>>& series) {
    std::vector<double> x, y;
    for (const auto& [R, c] : series) {
        x.push_back(R);
        y.push_back(c);
    }
    return fit_loglog(x, y);
}

} // namespace heis
