#pragma once

#include "heis/exec.hpp"
#include "heis/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace heis {

enum class Density { Uniform };

// n = 3 throughout, so a = 3/4 and s = 3 - gamma(alpha).
struct EnergyConfig {
    std::int64_t q = 16;
    int alpha = 4;
    Rational a{3, 4};
    Rational tau{1};
    Rational s{5, 2};
    Density density = Density::Uniform;

    void validate() const;
};

EnergyConfig make_energy_config(std::int64_t q, int alpha, const Rational& tau);

// (n - 1) a / (n - 1 - gamma), with a = n / (n + 1).
Rational tau_max(int alpha, int n = 3);

// A positive scale, exact when q is a perfect 4th power.
struct Scale {
    double value;
    std::optional<Rational> exact;
};

struct BoxSet {
    std::int64_t q;
    std::array<std::int64_t, 3> M; // centers b_i / q^a (i = 1, 2), b_3 / q^{2a}, b_i in [1, M_i]
    Scale h;                       // q^{-a}
    Scale hv;                      // q^{-2a}
    Scale W;                       // q^{-tau}
    Scale H;                       // q^{-a-tau}
    Scale V;                       // W^2 H
    std::uint64_t N;

    std::array<double, 3> center(std::int64_t b1, std::int64_t b2, std::int64_t b3) const;
    // Exact centers, available when q is a perfect 4th power.
    std::array<Rational, 3> center_exact(std::int64_t b1, std::int64_t b2, std::int64_t b3) const;
    // Total mu_q mass, N V / |E_q|, as an exact rational when possible.
    std::optional<Rational> total_mass_exact() const;
};

// Smallest m >= 1 with m^k >= q^j.
std::int64_t ceil_root_power(std::int64_t q, unsigned j, unsigned k);

BoxSet build_box_set(const EnergyConfig& cfg);

enum class PairCase { Self, Sep1, Sep2, Sep3, Dom, Prox };

const char* case_name(PairCase c);
inline constexpr std::array<PairCase, 6> kAllCases{PairCase::Self, PairCase::Sep1, PairCase::Sep2,
                                                   PairCase::Sep3, PairCase::Dom,  PairCase::Prox};

PairCase pair_classify(const std::array<std::int64_t, 3>& b, const std::array<std::int64_t, 3>& bp);
PairCase classify_difference(std::int64_t d1, std::int64_t d2, std::int64_t d3);

struct EnergyResult {
    double value = 0;
    EnergyConfig config;
    std::map<std::string, double> case_breakdown;
    std::int64_t prox_refined = 0; // vertical offsets refined by sub-cubes
};

// 8 * int_{[0,L]} |v|^{-s} prod (L_i - v_i) dv, the raw double integral of
// |x - y|^{-s} over a box with itself.
double box_self_integral(std::array<double, 3> L, double s);

struct MonteCarloEstimate {
    double value;
    double std_error;
};

MonteCarloEstimate box_self_integral_mc(std::array<double, 3> L, double s, std::uint64_t samples,
                                        std::uint64_t seed);

// The SELF contribution to the normalized energy.
double self_term(const EnergyConfig& cfg);

EnergyResult energy_direct(const EnergyConfig& cfg, Exec exec = Exec::Parallel);
EnergyResult energy_grouped(const EnergyConfig& cfg, Exec exec = Exec::Parallel);

inline constexpr std::uint64_t kDirectBudget = 1ull << 34; // ordered pairs

struct ScanRow {
    Rational tau;
    std::int64_t q;
    EnergyResult result;
    std::optional<double> ratio_prev;  // energy(q) / energy(previous q), same tau
    std::optional<double> ratio_first; // energy(q) / energy(first q), same tau
};

std::vector<ScanRow> boundedness_scan(int alpha, const std::vector<Rational>& taus,
                                      const std::vector<std::int64_t>& qs, Exec exec = Exec::Parallel);

} // namespace heis
