#include "heis/squares.hpp"

#include "heis/errors.hpp"

#include <string>

namespace heis {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw BudgetError("r_2d(k) overflows 64 bits");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw BudgetError("r_2d(k) overflows 64 bits");
    return r;
}

// out = in * r_1, where r_1(m^2) = 2 for m > 0 and r_1(0) = 1.
std::vector<std::uint64_t> times_r1(const std::vector<std::uint64_t>& in) {
    const std::uint64_t K = in.size() - 1;
    std::vector<std::uint64_t> out(in);
    for (std::uint64_t m = 1; m * m <= K; ++m) {
        const std::uint64_t sq = m * m;
        for (std::uint64_t k = sq; k <= K; ++k)
            if (in[k - sq]) out[k] = checked_add(out[k], checked_mul(2, in[k - sq]));
    }
    return out;
}

} // namespace

SquaresTable::SquaresTable(int d, std::uint64_t K) : d_(d), K_(K) {
    if (d < 1) throw ConfigError("d must be >= 1");
    if (K >= kMaxTableEntries)
        throw BudgetError("squares table of " + std::to_string(K + 1) + " entries exceeds budget");

    std::vector<std::uint64_t> r2(K + 1, 0);
    for (std::uint64_t a = 0; a * a <= K; ++a)
        for (std::uint64_t b = 0; a * a + b * b <= K; ++b)
            r2[a * a + b * b] += (a ? 2 : 1) * (b ? 2 : 1);

    counts_ = r2;
    for (int j = 1; j < d; ++j) counts_ = times_r1(times_r1(counts_));
}

SquaresTable build_squares_table(int d, std::uint64_t K) { return SquaresTable(d, K); }

} // namespace heis
