#pragma once

#include "heis/core.hpp"
#include "heis/exec.hpp"
#include "heis/squares.hpp"

#include <cstdint>
#include <string>

namespace heis {

enum class CountMethod { Brute, Fast };

struct CountResult {
    std::uint64_t count = 0;
    ShellQuery query;
    CountMethod method;
    std::uint64_t boundary_escalations = 0;
};

inline constexpr double kBruteBudget = 4e9;

// Box |z_i| <= R + delta, |t| <= (R + delta)^2, every point tested.
CountResult brute_count(const ShellQuery& q, Exec exec = Exec::Parallel);

// Sum over k of r_{2d}(k) * T(k).
CountResult fast_count(const ShellQuery& q, const SquaresTable& table, Exec exec = Exec::Parallel);
CountResult fast_count(const ShellQuery& q, Exec exec = Exec::Parallel);

// Lattice points in a closed band, by the same k-scan.
std::uint64_t band_count(const RadialBand& band, const HeisParams& params, const SquaresTable& table,
                         Exec exec, std::uint64_t* escalations = nullptr);

std::uint64_t pair_count(const ShellQuery& q, const SquaresTable& table, Exec exec = Exec::Parallel);
std::uint64_t pair_count(const ShellQuery& q, Exec exec = Exec::Parallel);

std::uint64_t count_two_centers(const ShellQuery& q, const LatticePoint& p, Exec exec = Exec::Parallel);

// #(Z^n in B_R) - R^{2d+2} |B_1|.
double error_term(const Rational& R, const HeisParams& params, Exec exec = Exec::Parallel);

// n - gamma / (n - 1 - gamma), the exponent of R in the counting bound.
double bound_exponent(int n, double gamma);

enum class DeltaKind { Fixed, Power };

// "fixed:<v>" gives delta = v, "power:<e>" gives delta = R^(-e).
struct DeltaRule {
    DeltaKind kind = DeltaKind::Fixed;
    Rational value;

    static DeltaRule parse(const std::string& text);
    Rational delta_for(const Rational& R) const;
    std::string str() const;
};

std::uint64_t table_extent(const RadialBand& band);

} // namespace heis
