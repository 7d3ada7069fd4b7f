#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace heis {

struct SweepResult {
    std::vector<double> abscissae;
    std::vector<double> values;
    double slope = 0;
    double intercept = 0;
    double max_residual = 0;
    std::size_t dropped = 0; // non-positive values left out of the fit
};

// Least squares of log(values) on log(abscissae). Non-positive values are
// dropped and counted; fewer than 3 usable points is a ConfigError.
SweepResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

SweepResult fit_exponent(const std::vector<std::pair<double, double>>& series);

} // namespace heis
