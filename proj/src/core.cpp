#include "heis/core.hpp"

#include "heis/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace heis {

namespace {

constexpr std::int64_t kIntLimit = std::int64_t{1} << 62;

// Saturates at kIntLimit.
std::int64_t ipow_sat(std::uint64_t base, int e) {
    unsigned __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= base;
        if (r >= static_cast<unsigned __int128>(kIntLimit)) return kIntLimit;
    }
    return static_cast<std::int64_t>(r);
}

bool perfect_square(std::uint64_t x, std::uint64_t& root) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    root = r;
    return r * r == x;
}

} // namespace

HeisParams::HeisParams(int alpha, int d, double A) : alpha_(alpha), d_(d), A_(A) {
    if (alpha < 2) throw ConfigError("alpha must be >= 2, got " + std::to_string(alpha));
    if (d < 1) throw ConfigError("d must be >= 1, got " + std::to_string(d));
    if (A != 1.0) throw ConfigError("only A = 1 is supported");
}

double norm(const Point& p, const HeisParams& params) {
    if (p.z.size() != static_cast<std::size_t>(2 * params.d()))
        throw ConfigError("point has " + std::to_string(p.z.size()) + " z-coordinates, expected " +
                          std::to_string(2 * params.d()));
    double z2 = 0;
    for (double v : p.z) z2 += v * v;
    const double a = params.alpha();
    double s = std::pow(z2, a / 2) + std::pow(std::abs(p.t), a / 2);
    return std::pow(s, 1.0 / a);
}

Point dilate(const Point& p, double a) {
    if (!(a > 0)) throw ConfigError("dilation factor must be positive");
    Point r = p;
    for (double& v : r.z) v *= a;
    r.t *= a * a;
    return r;
}

ShellQuery::ShellQuery(Rational R, Rational delta, HeisParams params)
    : R_(std::move(R)), delta_(std::move(delta)), params_(params) {
    if (R_ <= 0) throw ConfigError("R must be positive");
    if (delta_ < 0 || delta_ >= 1) throw ConfigError("delta must lie in [0, 1)");
    if (R_ - delta_ < 0) throw ConfigError("R - delta must be >= 0");
}

ShellTester::ShellTester(const RadialBand& band, const HeisParams& params, double eta_rel)
    : band_(band), params_(params) {
    if (band.inner < 0 || band.outer < band.inner) throw ConfigError("invalid radial band");
    inner_d_ = to_double(band.inner);
    outer_d_ = to_double(band.outer);
    const unsigned alpha = static_cast<unsigned>(params.alpha());
    lo_exact_ = pow_int(band.inner, alpha);
    hi_exact_ = pow_int(band.outer, alpha);
    if (hi_exact_ >= Rational(kIntLimit)) throw BudgetError("outer radius^alpha exceeds 2^62");
    if (params.even_alpha()) {
        lo_int_ = static_cast<std::int64_t>(ceil_of(lo_exact_));
        hi_int_ = static_cast<std::int64_t>(floor_of(hi_exact_));
    } else {
        lo_d_ = to_double(lo_exact_);
        hi_d_ = to_double(hi_exact_);
        lo_hp_ = to_high(lo_exact_);
        hi_hp_ = to_high(hi_exact_);
        eta_ = eta_rel * std::max(1.0, hi_d_);
    }
}

// Sign of (k^(alpha/2) + s^(alpha/2)) - threshold, for odd alpha.
int ShellTester::compare_odd(std::uint64_t k, std::uint64_t s, bool upper, std::uint64_t& esc) const {
    const double a2 = params_.alpha() / 2.0;
    const double thr = upper ? hi_d_ : lo_d_;
    double v = std::pow(static_cast<double>(k), a2) + std::pow(static_cast<double>(s), a2);
    double diff = v - thr;
    if (std::abs(diff) > eta_) return diff > 0 ? 1 : -1;

    ++esc;
    const unsigned alpha = static_cast<unsigned>(params_.alpha());
    std::uint64_t rk = 0, rs = 0;
    if (perfect_square(k, rk) && perfect_square(s, rs)) {
        Rational exact(boost::multiprecision::pow(BigInt(rk), alpha) + boost::multiprecision::pow(BigInt(rs), alpha));
        const Rational& t = upper ? hi_exact_ : lo_exact_;
        return exact < t ? -1 : (exact > t ? 1 : 0);
    }
    HighFloat hv = boost::multiprecision::pow(boost::multiprecision::sqrt(HighFloat(k)), alpha) +
                   boost::multiprecision::pow(boost::multiprecision::sqrt(HighFloat(s)), alpha);
    HighFloat hd = hv - (upper ? hi_hp_ : lo_hp_);
    if (hd == 0) throw ConsistencyError("irrational shell value tied a rational threshold");
    return hd > 0 ? 1 : -1;
}

Position ShellTester::position(std::uint64_t k, std::uint64_t s, std::uint64_t& escalations) const {
    const int m = params_.alpha();
    if (params_.even_alpha()) {
        std::int64_t zk = ipow_sat(k, m / 2);
        std::int64_t ts = ipow_sat(s, m / 2);
        if (zk >= kIntLimit || ts >= kIntLimit || zk + ts > hi_int_) return Position::Above;
        if (zk + ts < lo_int_) return Position::Below;
        return Position::Inside;
    }
    if (band_.inner > 0 && compare_odd(k, s, false, escalations) < 0) return Position::Below;
    if (compare_odd(k, s, true, escalations) > 0) return Position::Above;
    return Position::Inside;
}

std::uint64_t squared_norm(const std::vector<std::int64_t>& z) {
    std::uint64_t k = 0;
    for (auto v : z) k += static_cast<std::uint64_t>(v * v);
    return k;
}

ShellSide ShellTester::test(const LatticePoint& m, std::uint64_t& escalations) const {
    if (m.z.size() != static_cast<std::size_t>(2 * params_.d()))
        throw ConfigError("lattice point dimension mismatch");
    auto s = static_cast<std::uint64_t>(m.t < 0 ? -m.t : m.t);
    return position(squared_norm(m.z), s, escalations) == Position::Inside ? ShellSide::In : ShellSide::Out;
}

ShellSide shell_test(const LatticePoint& m, const ShellQuery& q) {
    ShellTester tester(q.band(), q.params());
    std::uint64_t esc = 0;
    return tester.test(m, esc);
}

} // namespace heis
