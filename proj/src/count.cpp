#include "heis/count.hpp"

#include "heis/errors.hpp"
#include "heis/geometry.hpp"

#include <cmath>
#include <vector>

namespace heis {

std::uint64_t table_extent(const RadialBand& band) {
    BigInt k = floor_of(band.outer * band.outer);
    if (k >= BigInt(kMaxTableEntries)) throw BudgetError("radius too large for a squares table");
    return static_cast<std::uint64_t>(k);
}

namespace {

// Number of t in Z with (k, |t|) inside the band.
std::uint64_t t_count(const ShellTester& tester, std::uint64_t k, std::uint64_t& esc) {
    if (tester.position(k, 0, esc) == Position::Above) return 0;

    const double a = tester.params().alpha();
    const double kk = std::pow(static_cast<double>(k), a / 2);
    const double lo = std::pow(tester.inner_double(), a) - kk;
    const double hi = std::pow(tester.outer_double(), a) - kk;
    auto guess = [&](double v) -> std::uint64_t {
        if (!(v > 0)) return 0;
        double s = std::pow(v, 2.0 / a);
        return s > 9e18 ? std::uint64_t{9000000000000000000ull} : static_cast<std::uint64_t>(s);
    };

    std::uint64_t s_lo = guess(lo);
    while (s_lo > 0 && tester.position(k, s_lo - 1, esc) != Position::Below) --s_lo;
    while (tester.position(k, s_lo, esc) == Position::Below) ++s_lo;

    std::uint64_t s_hi = std::max(guess(hi), s_lo);
    while (s_hi > s_lo && tester.position(k, s_hi, esc) == Position::Above) --s_hi;
    while (tester.position(k, s_hi + 1, esc) != Position::Above) ++s_hi;

    if (tester.position(k, s_hi, esc) != Position::Inside) return 0;
    return 2 * (s_hi - s_lo + 1) - (s_lo == 0 ? 1 : 0);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw BudgetError("count overflows 64 bits");
    return r;
}

} // namespace

std::uint64_t band_count(const RadialBand& band, const HeisParams& params, const SquaresTable& table,
                         Exec exec, std::uint64_t* escalations) {
    if (table.d() != params.d()) throw ConfigError("squares table dimension does not match d");
    const std::uint64_t K = table_extent(band);
    if (table.K() < K) throw ConfigError("squares table too small: need K >= " + std::to_string(K));

    ShellTester tester(band, params);
    std::uint64_t total = 0, esc = 0;
    const auto n = static_cast<std::int64_t>(K) + 1;
#pragma omp parallel for schedule(dynamic, 1024) reduction(+ : total, esc) if (parallel(exec))
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::uint64_t>(i);
        const std::uint64_t r = table[k];
        if (r == 0) continue;
        total += r * t_count(tester, k, esc);
    }
    if (escalations) *escalations = esc;
    return total;
}

CountResult fast_count(const ShellQuery& q, const SquaresTable& table, Exec exec) {
    CountResult res{0, q, CountMethod::Fast, 0};
    res.count = band_count(q.band(), q.params(), table, exec, &res.boundary_escalations);
    return res;
}

CountResult fast_count(const ShellQuery& q, Exec exec) {
    SquaresTable table(q.params().d(), table_extent(q.band()));
    return fast_count(q, table, exec);
}

namespace {

struct Box {
    std::int64_t B;
    std::int64_t T;
    std::int64_t nz;
    int dims;
};

Box enumeration_box(const ShellQuery& q) {
    const Rational top = q.R() + q.delta();
    Box b;
    b.B = static_cast<std::int64_t>(floor_of(top));
    b.T = static_cast<std::int64_t>(floor_of(top * top));
    b.dims = 2 * q.params().d();
    double size = std::pow(2.0 * b.B + 1, b.dims) * (2.0 * b.T + 1);
    if (size > kBruteBudget) throw BudgetError("brute-force box of " + std::to_string(size) + " points exceeds budget");
    b.nz = static_cast<std::int64_t>(std::llround(std::pow(2.0 * b.B + 1, b.dims)));
    return b;
}

void decode(std::int64_t idx, const Box& b, std::vector<std::int64_t>& z) {
    const std::int64_t w = 2 * b.B + 1;
    for (int i = 0; i < b.dims; ++i) {
        z[i] = idx % w - b.B;
        idx /= w;
    }
}

} // namespace

CountResult brute_count(const ShellQuery& q, Exec exec) {
    const Box box = enumeration_box(q);
    ShellTester tester(q.band(), q.params());
    std::uint64_t total = 0, esc = 0;
#pragma omp parallel for schedule(static) reduction(+ : total, esc) if (parallel(exec))
    for (std::int64_t idx = 0; idx < box.nz; ++idx) {
        std::vector<std::int64_t> z(box.dims);
        decode(idx, box, z);
        const std::uint64_t k = squared_norm(z);
        for (std::int64_t t = -box.T; t <= box.T; ++t) {
            const auto s = static_cast<std::uint64_t>(t < 0 ? -t : t);
            if (tester.position(k, s, esc) == Position::Inside) ++total;
        }
    }
    return {total, q, CountMethod::Brute, esc};
}

std::uint64_t pair_count(const ShellQuery& q, const SquaresTable& table, Exec exec) {
    const std::uint64_t c = fast_count(q, table, exec).count;
    return checked_mul(c, c);
}

std::uint64_t pair_count(const ShellQuery& q, Exec exec) {
    const std::uint64_t c = fast_count(q, exec).count;
    return checked_mul(c, c);
}

std::uint64_t count_two_centers(const ShellQuery& q, const LatticePoint& p, Exec exec) {
    if (p.z.size() != static_cast<std::size_t>(2 * q.params().d()))
        throw ConfigError("center dimension does not match d");
    const Box box = enumeration_box(q);
    ShellTester tester(q.band(), q.params());
    std::uint64_t total = 0, esc = 0;
#pragma omp parallel for schedule(static) reduction(+ : total, esc) if (parallel(exec))
    for (std::int64_t idx = 0; idx < box.nz; ++idx) {
        std::vector<std::int64_t> z(box.dims);
        decode(idx, box, z);
        const std::uint64_t k = squared_norm(z);
        std::uint64_t k2 = 0;
        for (int i = 0; i < box.dims; ++i) {
            const std::int64_t w = z[i] - p.z[i];
            k2 += static_cast<std::uint64_t>(w * w);
        }
        for (std::int64_t t = -box.T; t <= box.T; ++t) {
            const auto s = static_cast<std::uint64_t>(t < 0 ? -t : t);
            if (tester.position(k, s, esc) != Position::Inside) continue;
            const std::int64_t t2 = t - p.t;
            const auto s2 = static_cast<std::uint64_t>(t2 < 0 ? -t2 : t2);
            if (tester.position(k2, s2, esc) == Position::Inside) ++total;
        }
    }
    return total;
}

double error_term(const Rational& R, const HeisParams& params, Exec exec) {
    if (R <= 0) throw ConfigError("R must be positive");
    const RadialBand band{Rational(0), R};
    SquaresTable table(params.d(), table_extent(band));
    const std::uint64_t c = band_count(band, params, table, exec);
    const double vol = unit_ball_volume(params.alpha(), params.d());
    return static_cast<double>(c) - std::pow(to_double(R), 2 * params.d() + 2) * vol;
}

double bound_exponent(int n, double gamma) { return n - gamma / (n - 1 - gamma); }

DeltaRule DeltaRule::parse(const std::string& text) {
    const auto colon = text.find(':');
    DeltaRule r;
    if (colon == std::string::npos) {
        r.value = parse_rational(text);
    } else {
        const std::string head = text.substr(0, colon);
        if (head == "fixed") r.kind = DeltaKind::Fixed;
        else if (head == "power") r.kind = DeltaKind::Power;
        else throw ConfigError("malformed delta rule '" + text + "'");
        r.value = parse_rational(text.substr(colon + 1));
    }
    if (r.kind == DeltaKind::Fixed && (r.value < 0 || r.value >= 1))
        throw ConfigError("fixed delta must lie in [0, 1)");
    if (r.kind == DeltaKind::Power && r.value <= 0) throw ConfigError("power exponent must be positive");
    return r;
}

Rational DeltaRule::delta_for(const Rational& R) const {
    if (kind == DeltaKind::Fixed) return value;
    return rational_from_double(std::pow(to_double(R), -to_double(value)));
}

std::string DeltaRule::str() const {
    return (kind == DeltaKind::Fixed ? "fixed:" : "power:") + to_string(value);
}

} // namespace heis
