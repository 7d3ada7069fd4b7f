#include "heis/geometry.hpp"

#include "heis/errors.hpp"
#include "heis/rational.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <cmath>
#include <string>

namespace heis {

namespace {

void check(int alpha, int d) {
    if (alpha < 2) throw ConfigError("alpha must be >= 2");
    if (d < 1) throw ConfigError("d must be >= 1");
}

std::optional<double> product(const std::vector<std::optional<double>>& ev) {
    double p = 1;
    for (const auto& e : ev) {
        if (!e) return std::nullopt;
        p *= *e;
    }
    return p;
}

using boost::multiprecision::abs;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

HighFloat graph(Location where, int alpha, const std::vector<HighFloat>& x) {
    const HighFloat a(alpha);
    if (where == Location::Pole) {
        HighFloat r2 = 0;
        for (const auto& v : x) r2 += v * v;
        HighFloat za = r2 == 0 ? HighFloat(0) : pow(r2, a / 2);
        return pow(1 - za, 2 / a);
    }
    // last coordinate is t
    HighFloat r2 = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) r2 += x[i] * x[i];
    const HighFloat s = abs(x.back());
    HighFloat ts = s == 0 ? HighFloat(0) : pow(s, a / 2);
    return sqrt(pow(1 - ts, 2 / a) - r2);
}

} // namespace

CurvatureReport curvature_pole(int alpha, int d) {
    check(alpha, d);
    CurvatureReport r{Location::Pole, alpha, d, {}, std::nullopt};
    r.eigenvalues.assign(2 * d, alpha == 2 ? -2.0 : 0.0);
    r.gaussian = product(r.eigenvalues);
    return r;
}

CurvatureReport curvature_equator(int alpha, int d) {
    check(alpha, d);
    CurvatureReport r{Location::Equator, alpha, d, {}, std::nullopt};
    r.eigenvalues.assign(2 * d - 1, -1.0);
    // z1 = (1 - |t|^(alpha/2))^(1/alpha) along the t-axis.
    if (alpha == 4) r.eigenvalues.push_back(-0.5);
    else if (alpha > 4) r.eigenvalues.push_back(0.0);
    else r.eigenvalues.push_back(std::nullopt);
    r.gaussian = product(r.eigenvalues);
    return r;
}

std::vector<std::vector<double>> fd_hessian(Location where, int alpha, int d, double step) {
    check(alpha, d);
    const int m = 2 * d;
    const HighFloat h(step);
    std::vector<HighFloat> x(m, HighFloat(0));
    const HighFloat f0 = graph(where, alpha, x);
    std::vector<std::vector<double>> H(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            HighFloat val;
            if (i == j) {
                x[i] = h;
                HighFloat fp = graph(where, alpha, x);
                x[i] = -h;
                HighFloat fm = graph(where, alpha, x);
                x[i] = 0;
                val = (fp - 2 * f0 + fm) / (h * h);
            } else {
                HighFloat acc = 0;
                for (int si : {1, -1})
                    for (int sj : {1, -1}) {
                        x[i] = si * h;
                        x[j] = sj * h;
                        acc += si * sj * graph(where, alpha, x);
                    }
                x[i] = x[j] = 0;
                val = acc / (4 * h * h);
            }
            H[i][j] = H[j][i] = static_cast<double>(val);
        }
    }
    return H;
}

double curvature_fd_discrepancy(const CurvatureReport& report, double step) {
    const auto H = fd_hessian(report.location, report.alpha, report.d, step);
    const std::size_t m = H.size();
    double worst = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!report.eigenvalues[i]) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (!report.eigenvalues[j]) continue;
            const double expect = i == j ? *report.eigenvalues[i] : 0.0;
            worst = std::max(worst, std::abs(H[i][j] - expect));
        }
    }
    return worst;
}

double unit_ball_volume_beta(int alpha, int d) {
    check(alpha, d);
    const double pi = boost::math::constants::pi<double>();
    const double omega = std::pow(pi, d) / boost::math::factorial<double>(d);
    const double a = alpha;
    return omega * (4.0 / a) * boost::math::beta(2.0 / a, 1.0 + 2.0 * d / a);
}

double unit_ball_volume_quadrature(int alpha, int d) {
    check(alpha, d);
    const double pi = boost::math::constants::pi<double>();
    const double omega = std::pow(pi, d) / boost::math::factorial<double>(d);
    const double a = alpha;
    // slab at height t has |z| <= (1 - t^(alpha/2))^(1/alpha)
    auto slab = [&](double t) { return std::pow(1.0 - std::pow(t, a / 2), 2.0 * d / a); };
    boost::math::quadrature::tanh_sinh<double> ts;
    return 2 * omega * ts.integrate(slab, 0.0, 1.0);
}

double unit_ball_volume(int alpha, int d) {
    const double b = unit_ball_volume_beta(alpha, d);
    const double q = unit_ball_volume_quadrature(alpha, d);
    if (std::abs(b - q) > 1e-6 * b)
        throw ConsistencyError("unit ball volume: Beta form " + std::to_string(b) + " vs quadrature " +
                               std::to_string(q));
    return b;
}

} // namespace heis
