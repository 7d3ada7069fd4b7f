#pragma once

#include <cstdint>
#include <vector>

namespace heis {

// counts[k] = r_{2d}(k), the number of v in Z^{2d} with |v|^2 = k.
class SquaresTable {
public:
    SquaresTable(int d, std::uint64_t K);

    int d() const { return d_; }
    std::uint64_t K() const { return K_; }
    std::uint64_t operator[](std::uint64_t k) const { return counts_[k]; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

private:
    int d_;
    std::uint64_t K_;
    std::vector<std::uint64_t> counts_;
};

inline constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 27;

SquaresTable build_squares_table(int d, std::uint64_t K);

} // namespace heis
