#include "heis/energy.hpp"

#include "heis/errors.hpp"
#include "heis/surface.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace heis {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

// q^e as an exact rational, if q is a perfect power of the denominator of e.
std::optional<Rational> exact_power(std::int64_t q, const Rational& e) {
    const BigInt p = boost::multiprecision::numerator(e);
    const BigInt m = boost::multiprecision::denominator(e);
    if (m > 64) return std::nullopt;
    const auto mu = static_cast<unsigned>(m);
    const BigInt r = integer_root_floor(BigInt(q), mu);
    if (boost::multiprecision::pow(r, mu) != q) return std::nullopt;
    const auto ap = static_cast<unsigned>(p < 0 ? BigInt(-p) : p);
    const BigInt rp = boost::multiprecision::pow(r, ap);
    return p < 0 ? Rational(BigInt(1), rp) : Rational(rp);
}

Scale scale(std::int64_t q, const Rational& e) {
    Scale s;
    s.exact = exact_power(q, e);
    s.value = s.exact ? to_double(*s.exact)
                      : static_cast<double>(boost::multiprecision::pow(HighFloat(q), to_high(e)));
    return s;
}

// Vertical offsets 1..size()-1 use sub-cube averages; beyond that, centers.
struct ProxTable {
    std::vector<double> refined;
};

double center_kernel(double dx, double dy, double dz, double s) {
    return std::pow(dx * dx + dy * dy + dz * dz, -0.5 * s);
}

// Mean kernel between two W x W x H boxes stacked at vertical gap g, each cut
// into m x m cubes.
double prox_refined(std::int64_t m, double W, double g, double s) {
    const double step = W / static_cast<double>(m);
    double acc = 0;
    for (std::int64_t i = 0; i < m; ++i) {
        const double ci = (i ? 2.0 : 1.0) * static_cast<double>(m - i);
        for (std::int64_t j = 0; j < m; ++j) {
            const double cj = (j ? 2.0 : 1.0) * static_cast<double>(m - j);
            acc += ci * cj * center_kernel(i * step, j * step, g, s);
        }
    }
    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    return acc / (m2 * m2);
}

ProxTable build_prox(const BoxSet& bs, double s) {
    ProxTable t;
    t.refined.push_back(0.0);
    const std::int64_t m = bs.M[0];
    for (std::int64_t d3 = 1; d3 < bs.M[2]; ++d3) {
        const double g = static_cast<double>(d3) * bs.hv.value;
        const double ref = prox_refined(m, bs.W.value, g, s);
        t.refined.push_back(ref);
        if (d3 >= 3 && std::abs(ref - center_kernel(0, 0, g, s)) <= 0.01 * ref) break;
    }
    return t;
}

double prox_kernel(const ProxTable& t, const BoxSet& bs, std::int64_t d3, double s) {
    d3 = d3 < 0 ? -d3 : d3;
    if (d3 < static_cast<std::int64_t>(t.refined.size())) return t.refined[d3];
    return center_kernel(0, 0, static_cast<double>(d3) * bs.hv.value, s);
}

std::size_t index_of(PairCase c) { return static_cast<std::size_t>(c); }

EnergyResult assemble(const EnergyConfig& cfg, const BoxSet& bs, double self_raw,
                      const std::array<double, 6>& sums, std::int64_t refined) {
    EnergyResult r;
    r.config = cfg;
    const double n = static_cast<double>(bs.N);
    double total = 0;
    for (PairCase c : kAllCases) {
        const double part = c == PairCase::Self ? self_raw : sums[index_of(c)] / (n * n);
        r.case_breakdown[case_name(c)] = part;
        total += part;
    }
    r.value = total;
    r.prox_refined = refined;
    return r;
}

} // namespace

void EnergyConfig::validate() const {
    if (q < 1) throw ConfigError("q must be >= 1");
    if (alpha < 2) throw ConfigError("alpha must be >= 2");
    if (a != Rational(3, 4)) throw ConfigError("a must be 3/4 for n = 3");
    if (tau <= a) throw ConfigError("tau must exceed a = 3/4, got " + to_string(tau));
    if (s < Rational(5, 2) || s >= 3) throw ConfigError("s must lie in [5/2, 3)");
}

EnergyConfig make_energy_config(std::int64_t q, int alpha, const Rational& tau) {
    EnergyConfig c;
    c.q = q;
    c.alpha = alpha;
    c.tau = tau;
    c.s = Rational(3) - gamma(alpha, 3).gamma;
    c.validate();
    return c;
}

Rational tau_max(int alpha, int n) {
    const Rational a(n, n + 1);
    return Rational(n - 1) * a / (Rational(n - 1) - gamma(alpha, n).gamma);
}

std::int64_t ceil_root_power(std::int64_t q, unsigned j, unsigned k) {
    const BigInt x = boost::multiprecision::pow(BigInt(q), j);
    BigInt r = integer_root_floor(x, k);
    if (boost::multiprecision::pow(r, k) < x) ++r;
    return static_cast<std::int64_t>(r);
}

std::array<double, 3> BoxSet::center(std::int64_t b1, std::int64_t b2, std::int64_t b3) const {
    return {static_cast<double>(b1) * h.value, static_cast<double>(b2) * h.value,
            static_cast<double>(b3) * hv.value};
}

std::array<Rational, 3> BoxSet::center_exact(std::int64_t b1, std::int64_t b2, std::int64_t b3) const {
    if (!h.exact || !hv.exact) throw ConfigError("exact centers need q to be a perfect 4th power");
    return {Rational(b1) * *h.exact, Rational(b2) * *h.exact, Rational(b3) * *hv.exact};
}

std::optional<Rational> BoxSet::total_mass_exact() const {
    if (!V.exact) return std::nullopt;
    const Rational measure = Rational(N) * *V.exact; // |E_q|
    return Rational(N) * *V.exact / measure;
}

BoxSet build_box_set(const EnergyConfig& cfg) {
    cfg.validate();
    BoxSet bs;
    bs.q = cfg.q;
    const std::int64_t m1 = ceil_root_power(cfg.q, 3, 4);
    const std::int64_t m3 = ceil_root_power(cfg.q, 3, 2);
    bs.M = {m1, m1, m3};
    bs.N = static_cast<std::uint64_t>(m1) * static_cast<std::uint64_t>(m1) * static_cast<std::uint64_t>(m3);
    bs.h = scale(cfg.q, -cfg.a);
    bs.hv = scale(cfg.q, -2 * cfg.a);
    bs.W = scale(cfg.q, -cfg.tau);
    bs.H = scale(cfg.q, -cfg.a - cfg.tau);
    bs.V = scale(cfg.q, -3 * cfg.tau - cfg.a);

    if (cfg.q > 1) {
        // tau > a gives W < h and H < hv; checked exactly where possible
        const HighFloat qh(cfg.q);
        auto hp = [&](const Rational& e) { return boost::multiprecision::pow(qh, to_high(e)); };
        if (!(hp(-cfg.tau) < hp(-cfg.a)) || !(hp(-cfg.a - cfg.tau) < hp(-2 * cfg.a)))
            throw ConsistencyError("boxes overlap");
    }
    return bs;
}

const char* case_name(PairCase c) {
    switch (c) {
    case PairCase::Self: return "SELF";
    case PairCase::Sep1: return "SEP1";
    case PairCase::Sep2: return "SEP2";
    case PairCase::Sep3: return "SEP3";
    case PairCase::Dom: return "DOM";
    case PairCase::Prox: return "PROX";
    }
    return "?";
}

PairCase classify_difference(std::int64_t d1, std::int64_t d2, std::int64_t d3) {
    const int horiz = (d1 != 0) + (d2 != 0);
    if (d3 == 0) {
        if (horiz == 0) return PairCase::Self;
        return horiz == 1 ? PairCase::Sep1 : PairCase::Sep2;
    }
    if (horiz == 0) return PairCase::Prox;
    return horiz == 1 ? PairCase::Dom : PairCase::Sep3;
}

PairCase pair_classify(const std::array<std::int64_t, 3>& b, const std::array<std::int64_t, 3>& bp) {
    return classify_difference(b[0] - bp[0], b[1] - bp[1], b[2] - bp[2]);
}

namespace {

using GL = boost::math::quadrature::gauss<double, 20>;

// Tensor Gauss-Legendre over a box, two panels per side.
template <class F>
double tensor_gl(const std::array<double, 3>& lo, const std::array<double, 3>& hi, F&& f) {
    const auto& x = GL::abscissa();
    const auto& w = GL::weights();
    std::array<std::vector<double>, 3> nodes, weights;
    for (int d = 0; d < 3; ++d) {
        const double len = (hi[d] - lo[d]) / 2;
        for (int p = 0; p < 2; ++p) {
            const double mid = lo[d] + (p + 0.5) * len;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (int sg : {-1, 1}) {
                    nodes[d].push_back(mid + sg * 0.5 * len * x[i]);
                    weights[d].push_back(0.5 * len * w[i]);
                }
        }
    }
    double acc = 0;
    for (std::size_t i = 0; i < nodes[0].size(); ++i)
        for (std::size_t j = 0; j < nodes[1].size(); ++j) {
            double inner = 0;
            for (std::size_t k = 0; k < nodes[2].size(); ++k)
                inner += weights[2][k] * f(nodes[0][i], nodes[1][j], nodes[2][k]);
            acc += weights[0][i] * weights[1][j] * inner;
        }
    return acc;
}

} // namespace

double box_self_integral(std::array<double, 3> L, double s) {
    if (!(s < 3)) throw ConfigError("s >= 3 makes the diagonal integral diverge");
    for (double v : L)
        if (!(v > 0)) throw ConfigError("box sides must be positive");
    std::sort(L.begin(), L.end(), std::greater<>());
    const double c = L[2];

    // Cube [0,c]^3: expand prod (L_i - v_i) into monomials v^e; each integral
    // of |v|^{-s} v^e over [0,1]^3 is its outer shell over 1 - 2^{-(3+|e|-s)}.
    double cube = 0;
    for (int mask = 0; mask < 8; ++mask) {
        int deg = 0;
        double coef = 1;
        for (int i = 0; i < 3; ++i) {
            if (mask >> i & 1) {
                ++deg;
                coef = -coef;
            } else {
                coef *= L[i];
            }
        }
        auto f = [&](double x, double y, double z) {
            const double v[3] = {x, y, z};
            double m = 1;
            for (int i = 0; i < 3; ++i)
                if (mask >> i & 1) m *= v[i];
            return m * std::pow(x * x + y * y + z * z, -0.5 * s);
        };
        double shell = 0;
        for (int sub = 1; sub < 8; ++sub) {
            std::array<double, 3> lo, hi;
            for (int i = 0; i < 3; ++i) {
                lo[i] = (sub >> i & 1) ? 0.5 : 0.0;
                hi[i] = lo[i] + 0.5;
            }
            shell += tensor_gl(lo, hi, f);
        }
        const double expo = 3 + deg - s;
        cube += coef * std::pow(c, expo) * shell / (1 - std::pow(2.0, -expo));
    }

    // The rest: v_3 in [0, c], (v_1, v_2) over dyadic L-shaped rings.
    auto g = [&](double x, double y, double z) {
        return std::pow(x * x + y * y + z * z, -0.5 * s) * (L[0] - x) * (L[1] - y) * (L[2] - z);
    };
    double rest = 0;
    for (double a = c; a < L[0]; a *= 2) {
        const double a1 = std::min(a, L[0]), b1 = std::min(2 * a, L[0]);
        const double a2 = std::min(a, L[1]), b2 = std::min(2 * a, L[1]);
        if (b1 > a1) rest += tensor_gl({a1, 0, 0}, {b1, b2, c}, g);
        if (b2 > a2) rest += tensor_gl({0, a2, 0}, {a1, b2, c}, g);
    }
    return 8 * (cube + rest);
}

MonteCarloEstimate box_self_integral_mc(std::array<double, 3> L, double s, std::uint64_t samples,
                                        std::uint64_t seed) {
    if (!(s < 3)) throw ConfigError("s >= 3 makes the diagonal integral diverge");
    if (samples < 2) throw ConfigError("need at least 2 samples");
    std::mt19937_64 gen(seed);
    auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    const double e = 3 - s;
    double sum = 0, sum2 = 0;
    for (std::uint64_t n = 0; n < samples; ++n) {
        // uniform direction in the positive octant
        const double u3 = unit();
        const double rxy = std::sqrt(1 - u3 * u3);
        const double ph = 0.5 * kPi * unit();
        const double u[3] = {rxy * std::cos(ph), rxy * std::sin(ph), u3};
        double rmax = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 3; ++i)
            if (u[i] > 0) rmax = std::min(rmax, L[i] / u[i]);
        // radius with density proportional to r^{2-s} on [0, rmax]
        const double r = rmax * std::pow(unit(), 1 / e);
        double w = 8 * (0.5 * kPi) * std::pow(rmax, e) / e;
        for (int i = 0; i < 3; ++i) w *= std::max(0.0, L[i] - r * u[i]);
        sum += w;
        sum2 += w * w;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, sum2 / n - mean * mean);
    return {mean, std::sqrt(var / (n - 1))};
}

double self_term(const EnergyConfig& cfg) {
    const BoxSet bs = build_box_set(cfg);
    const double D = box_self_integral({bs.W.value, bs.W.value, bs.H.value}, to_double(cfg.s));
    return D / (static_cast<double>(bs.N) * bs.V.value * bs.V.value);
}

EnergyResult energy_grouped(const EnergyConfig& cfg, Exec exec) {
    const BoxSet bs = build_box_set(cfg);
    const double s = to_double(cfg.s);
    const ProxTable prox = build_prox(bs, s);
    const auto [M1, M2, M3] = bs.M;

    std::vector<std::array<double, 6>> partial(static_cast<std::size_t>(M3));
#pragma omp parallel for schedule(dynamic, 1) if (parallel(exec))
    for (std::int64_t d3 = 0; d3 < M3; ++d3) {
        std::array<double, 6> acc{};
        const double m3 = static_cast<double>(M3 - d3) * (d3 ? 2.0 : 1.0);
        const double z = static_cast<double>(d3) * bs.hv.value;
        for (std::int64_t d1 = 0; d1 < M1; ++d1) {
            const double m1 = static_cast<double>(M1 - d1) * (d1 ? 2.0 : 1.0);
            const double x = static_cast<double>(d1) * bs.h.value;
            // the (d1, d2) and (d2, d1) classes share a kernel
            for (std::int64_t d2 = d1; d2 < M2; ++d2) {
                const PairCase c = classify_difference(d1, d2, d3);
                if (c == PairCase::Self) continue;
                const double m2 = static_cast<double>(M2 - d2) * (d2 ? 2.0 : 1.0);
                const double sym = d1 == d2 ? 1.0 : 2.0;
                const double k = c == PairCase::Prox
                                     ? prox_kernel(prox, bs, d3, s)
                                     : center_kernel(x, static_cast<double>(d2) * bs.h.value, z, s);
                acc[index_of(c)] += sym * m1 * m2 * m3 * k;
            }
        }
        partial[static_cast<std::size_t>(d3)] = acc;
    }
    std::array<double, 6> sums{};
    for (const auto& p : partial)
        for (std::size_t i = 0; i < 6; ++i) sums[i] += p[i];

    const double D = box_self_integral({bs.W.value, bs.W.value, bs.H.value}, s);
    const double self = D / (static_cast<double>(bs.N) * bs.V.value * bs.V.value);
    return assemble(cfg, bs, self, sums, static_cast<std::int64_t>(prox.refined.size()) - 1);
}

EnergyResult energy_direct(const EnergyConfig& cfg, Exec exec) {
    const BoxSet bs = build_box_set(cfg);
    if (static_cast<double>(bs.N) * static_cast<double>(bs.N) > static_cast<double>(kDirectBudget))
        throw BudgetError("direct pair loop over " + std::to_string(bs.N) + " boxes exceeds budget");
    const double s = to_double(cfg.s);
    const ProxTable prox = build_prox(bs, s);
    const auto [M1, M2, M3] = bs.M;
    const auto N = static_cast<std::int64_t>(bs.N);
    auto unflatten = [&](std::int64_t i) {
        return std::array<std::int64_t, 3>{i % M1 + 1, (i / M1) % M2 + 1, i / (M1 * M2) + 1};
    };

    std::vector<std::array<double, 6>> partial(static_cast<std::size_t>(N));
#pragma omp parallel for schedule(dynamic, 16) if (parallel(exec))
    for (std::int64_t i = 0; i < N; ++i) {
        const auto b = unflatten(i);
        const auto cb = bs.center(b[0], b[1], b[2]);
        std::array<double, 6> acc{};
        for (std::int64_t j = 0; j < N; ++j) {
            const auto bp = unflatten(j);
            const PairCase c = pair_classify(b, bp);
            if (c == PairCase::Self) continue;
            double k;
            if (c == PairCase::Prox) {
                k = prox_kernel(prox, bs, b[2] - bp[2], s);
            } else {
                const auto cp = bs.center(bp[0], bp[1], bp[2]);
                k = center_kernel(cb[0] - cp[0], cb[1] - cp[1], cb[2] - cp[2], s);
            }
            acc[index_of(c)] += k;
        }
        partial[static_cast<std::size_t>(i)] = acc;
    }
    std::array<double, 6> sums{};
    for (const auto& p : partial)
        for (std::size_t i = 0; i < 6; ++i) sums[i] += p[i];

    const double self = self_term(cfg);
    return assemble(cfg, bs, self, sums, static_cast<std::int64_t>(prox.refined.size()) - 1);
}

std::vector<ScanRow> boundedness_scan(int alpha, const std::vector<Rational>& taus,
                                      const std::vector<std::int64_t>& qs, Exec exec) {
    if (taus.empty() || qs.empty()) throw ConfigError("scan needs at least one tau and one q");
    std::vector<ScanRow> rows;
    for (const Rational& tau : taus) {
        double first = 0, prev = 0;
        for (std::size_t i = 0; i < qs.size(); ++i) {
            ScanRow row{tau, qs[i], energy_grouped(make_energy_config(qs[i], alpha, tau), exec), {}, {}};
            if (i > 0) {
                row.ratio_prev = row.result.value / prev;
                row.ratio_first = row.result.value / first;
            } else {
                first = row.result.value;
            }
            prev = row.result.value;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace heis
