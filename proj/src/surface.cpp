#include "heis/surface.hpp"

#include "heis/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace heis {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr int kPanel = 20;
// Upper bound of |dx/du| along the chart below, alpha in 2..12.
constexpr double kChartSpeed = 3.25;
constexpr double kNodeBudget = 2e9;

struct ChartNode {
    double rho;
    double t;
    double w; // rho * |x_u| * quadrature weight
};

// One sheet, u in [0, 1] from pole to equator, phi = (pi/2) I_u(alpha, alpha).
// The regularized incomplete beta flattens both ends so the integrand is smooth.
ChartNode chart(double u, double a, double wq) {
    using boost::math::ibeta;
    using boost::math::ibeta_derivative;
    const double s = std::sin(0.5 * kPi * ibeta(a, a, u));
    const double c = std::sin(0.5 * kPi * ibeta(a, a, 1 - u));
    const double phi_u = 0.5 * kPi * ibeta_derivative(a, a, u);
    const double rho = std::pow(s, 2 / a);
    const double t = std::pow(c, 4 / a);
    const double rho_u = rho * (2 / a) * (c / s) * phi_u;
    const double t_u = -t * (4 / a) * (s / c) * phi_u;
    return {rho, t, rho * std::hypot(rho_u, t_u) * wq};
}

std::vector<ChartNode> chart_nodes(int alpha, int nu) {
    static const auto& x = boost::math::quadrature::gauss<double, kPanel>::abscissa();
    static const auto& w = boost::math::quadrature::gauss<double, kPanel>::weights();
    const int panels = nu / kPanel;
    const double h = 1.0 / panels;
    std::vector<ChartNode> out;
    out.reserve(nu);
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (std::size_t i = 0; i < x.size(); ++i) {
            // abscissae are the non-negative half, 0 first for odd orders
            if (x[i] == 0) {
                out.push_back(chart(mid, alpha, w[i] * 0.5 * h));
                continue;
            }
            out.push_back(chart(mid - 0.5 * h * x[i], alpha, w[i] * 0.5 * h));
            out.push_back(chart(mid + 0.5 * h * x[i], alpha, w[i] * 0.5 * h));
        }
    }
    return out;
}

int round_up(double v, int m) {
    const auto k = static_cast<long long>(std::ceil(v / m));
    return static_cast<int>(std::max<long long>(k, 1) * m);
}

struct Estimate {
    std::complex<double> value;
    double abs_sum;
};

Estimate integrate(const std::array<double, 3>& xi, int alpha, int nu, int nt, Exec exec) {
    const auto nodes = chart_nodes(alpha, nu);
    const double xh = std::hypot(xi[0], xi[1]);
    const bool half = xi[1] == 0 && nt % 2 == 0;

    std::vector<double> ct(nt), st(nt), wt(nt, 2 * kPi / nt);
    for (int j = 0; j < nt; ++j) {
        ct[j] = std::cos(2 * kPi * j / nt);
        st[j] = std::sin(2 * kPi * j / nt);
    }
    if (half) {
        for (int j = 1; j < nt / 2; ++j) wt[j] *= 2;
        nt = nt / 2 + 1;
    }

    const auto n = static_cast<std::int64_t>(nodes.size());
    std::vector<std::complex<double>> terms(n);
#pragma omp parallel for schedule(static) if (parallel(exec))
    for (std::int64_t i = 0; i < n; ++i) {
        const ChartNode& c = nodes[i];
        std::complex<double> theta(2 * kPi, 0);
        if (xh != 0) {
            const double a = 2 * kPi * c.rho * xi[0];
            const double b = 2 * kPi * c.rho * xi[1];
            double re = 0, im = 0;
            for (int j = 0; j < nt; ++j) {
                const double ph = a * ct[j] + b * st[j];
                re += wt[j] * std::cos(ph);
                im -= wt[j] * std::sin(ph);
            }
            theta = {re, im};
        }
        // upper and lower sheets, t and -t
        terms[i] = c.w * 2 * std::cos(2 * kPi * c.t * xi[2]) * theta;
    }
    Estimate e{{0, 0}, 0};
    for (std::int64_t i = 0; i < n; ++i) {
        e.value += terms[i];
        e.abs_sum += 4 * kPi * nodes[i].w;
    }
    return e;
}

} // namespace

void SurfaceParam::validate() const {
    if (alpha < 2) throw ConfigError("alpha must be >= 2");
    if (resolution < 64) throw ConfigError("resolution must be >= 64");
    if (!(oversample >= 4)) throw ConfigError("oversample must be >= 4");
    if (!(tolerance > 0)) throw ConfigError("tolerance must be positive");
}

GammaExponent gamma(int alpha, int n) {
    if (alpha < 2) throw ConfigError("alpha must be >= 2");
    if (n < 3 || n % 2 == 0) throw ConfigError("n must be odd and >= 3");
    if (alpha == 2) return {alpha, n, Rational(n - 2, 2)};
    Rational g(n - 1, alpha);
    return {alpha, n, std::min(g, Rational(1, 2))};
}

ProfilePoint profile(double phi, int alpha) {
    if (alpha < 2) throw ConfigError("alpha must be >= 2");
    if (!(phi >= 0 && phi <= kPi)) throw ConfigError("phi must lie in [0, pi]");
    const double a = alpha;
    const double p = std::min(phi, kPi - phi);
    const double s = std::sin(p);
    const double c = std::sin(0.5 * kPi - p);
    const double rho = std::pow(s, 2 / a);
    const double sign = phi < 0.5 * kPi ? 1.0 : (phi > 0.5 * kPi ? -1.0 : 0.0);
    const double t = sign * std::pow(c, 4 / a);
    const double inf = std::numeric_limits<double>::infinity();
    double weight;
    if (s == 0) {
        weight = alpha < 4 ? 0.0 : (alpha == 4 ? kPi : inf);
    } else if (c == 0) {
        weight = alpha < 4 ? 0.0 : (alpha == 4 ? 2 * kPi : inf);
    } else {
        const double drho = (2 / a) * std::pow(s, 2 / a - 1) * c;
        const double dt = (4 / a) * std::pow(c, 4 / a - 1) * s;
        weight = 2 * kPi * rho * std::hypot(drho, dt);
    }
    return {rho, t, weight};
}

FourierSample sigma_hat(const std::array<double, 3>& xi, const SurfaceParam& cfg, Exec exec) {
    cfg.validate();
    const double m = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    if (!std::isfinite(m)) throw ConfigError("frequency must be finite");
    if (m > cfg.max_xi)
        throw BudgetError("|xi| = " + std::to_string(m) + " exceeds budget " + std::to_string(cfg.max_xi));
    const double xh = std::hypot(xi[0], xi[1]);

    const int nu = round_up(std::max<double>(cfg.resolution, cfg.oversample * (1 + m) * kChartSpeed), kPanel);
    int nt = 1;
    if (xh != 0) {
        nt = static_cast<int>(std::ceil(std::max({double(cfg.resolution), cfg.oversample * (1 + m),
                                                  1.25 * 2 * kPi * xh + 32})));
        nt += nt % 2;
    }
    if (5.0 * nu * nt > kNodeBudget) throw BudgetError("quadrature grid exceeds node budget");

    const Estimate coarse = integrate(xi, cfg.alpha, nu, nt, exec);
    const Estimate fine = integrate(xi, cfg.alpha, 2 * nu, xh != 0 ? 2 * nt : 1, exec);

    FourierSample s;
    s.xi = xi;
    s.value = fine.value;
    s.est_error = std::abs(fine.value - coarse.value) +
                  8 * std::numeric_limits<double>::epsilon() * fine.abs_sum;
    s.flagged = s.est_error > cfg.tolerance;
    return s;
}

double surface_area(const SurfaceParam& cfg, Exec exec) { return sigma_hat({0, 0, 0}, cfg, exec).value.real(); }

std::vector<double> dyadic_magnitudes(double lo, double hi) {
    if (!(lo > 0) || !(hi >= lo)) throw ConfigError("dyadic range needs 0 < lo <= hi");
    std::vector<double> out;
    for (double v = lo; v <= hi; v *= 2) out.push_back(v);
    return out;
}

DecayResult decay_sweep(const std::array<double, 3>& direction, const std::vector<double>& magnitudes,
                        const SurfaceParam& cfg, DecayMode mode, Exec exec) {
    cfg.validate();
    const double len = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                                 direction[2] * direction[2]);
    if (!(len > 0) || !std::isfinite(len)) throw ConfigError("direction must be a nonzero finite vector");
    if (magnitudes.size() < 4) throw ConfigError("decay sweep needs at least 4 magnitudes");
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        if (!(magnitudes[i] > 0)) throw ConfigError("magnitudes must be positive");
        if (i > 0 && magnitudes[i] != 2 * magnitudes[i - 1]) throw ConfigError("magnitudes must be dyadic");
    }

    DecayResult r;
    r.direction = {direction[0] / len, direction[1] / len, direction[2] / len};
    r.magnitudes = magnitudes;
    // rotate about the t-axis so that xi_2 = 0
    const double dh = std::hypot(r.direction[0], r.direction[1]);
    const double dz = r.direction[2];
    const int probes = mode == DecayMode::Envelope ? 4 : 1;

    std::vector<double> fx, fy;
    for (double lam : magnitudes) {
        double amp = 0;
        for (int j = 0; j < probes; ++j) {
            const double m = lam + j / 8.0;
            FourierSample s = sigma_hat({m * dh, 0, m * dz}, cfg, exec);
            if (s.flagged) ++r.flagged;
            amp = std::max(amp, std::abs(s.value));
            r.samples.push_back(s);
        }
        r.amplitude.push_back(amp);
        if (lam >= kMinFitMagnitude) {
            fx.push_back(lam);
            fy.push_back(amp >= kNoiseFloor ? amp : 0.0);
        }
    }
    const auto usable = std::count_if(fy.begin(), fy.end(), [](double v) { return v > 0; });
    if (usable < 3) {
        r.degenerate = true;
        r.fit.abscissae = fx;
        r.fit.values = fy;
        r.fit.dropped = fy.size() - usable;
        return r;
    }
    r.fit = fit_loglog(fx, fy);
    return r;
}

} // namespace heis
