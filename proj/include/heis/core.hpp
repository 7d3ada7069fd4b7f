#pragma once

#include "heis/rational.hpp"

#include <cstdint>
#include <vector>

namespace heis {

// Shape of the gauge (|z|^alpha + A|t|^(alpha/2))^(1/alpha) on R^(2d) x R.
// A is carried so the restriction is visible, but only A = 1 is accepted.
class HeisParams {
public:
    HeisParams(int alpha, int d, double A = 1.0);

    int alpha() const { return alpha_; }
    int d() const { return d_; }
    int n() const { return 2 * d_ + 1; }
    double A() const { return A_; }
    bool even_alpha() const { return alpha_ % 2 == 0; }

    friend bool operator==(const HeisParams&, const HeisParams&) = default;

private:
    int alpha_;
    int d_;
    double A_;
};

struct Point {
    std::vector<double> z;
    double t = 0.0;
};

struct LatticePoint {
    std::vector<std::int64_t> z;
    std::int64_t t = 0;
};

double norm(const Point& p, const HeisParams& params);

// Heisenberg dilation (z, t) -> (a z, a^2 t).
Point dilate(const Point& p, double a);

// Closed band inner <= ||m|| <= outer. A ball is the band [0, R].
struct RadialBand {
    Rational inner;
    Rational outer;
};

// The shell R - delta <= ||m|| <= R + delta, with R > 0, 0 <= delta < 1, R >= delta.
class ShellQuery {
public:
    ShellQuery(Rational R, Rational delta, HeisParams params);

    const Rational& R() const { return R_; }
    const Rational& delta() const { return delta_; }
    const HeisParams& params() const { return params_; }
    RadialBand band() const { return {R_ - delta_, R_ + delta_}; }

private:
    Rational R_;
    Rational delta_;
    HeisParams params_;
};

enum class ShellSide { In, Out };
enum class Position { Below, Inside, Above };

// Membership oracle for a band. Even alpha: |z|^alpha + |t|^(alpha/2) is an
// integer, compared against ceil(inner^alpha) / floor(outer^alpha) computed
// exactly once. Odd alpha: double comparison with guard band
// eta = eta_rel * outer^alpha; inside the band the comparison is redone exactly
// (both radicands perfect squares) or in 166-bit arithmetic (value irrational,
// so it cannot tie a rational threshold).
class ShellTester {
public:
    ShellTester(const RadialBand& band, const HeisParams& params, double eta_rel = 1e-9);

    // k = |z|^2, s = |t|. Escalations to exact/high precision are added to
    // `escalations`.
    Position position(std::uint64_t k, std::uint64_t s, std::uint64_t& escalations) const;
    ShellSide test(const LatticePoint& m, std::uint64_t& escalations) const;

    const HeisParams& params() const { return params_; }
    const RadialBand& band() const { return band_; }
    double inner_double() const { return inner_d_; }
    double outer_double() const { return outer_d_; }

private:
    int compare_odd(std::uint64_t k, std::uint64_t s, bool upper, std::uint64_t& esc) const;

    RadialBand band_;
    HeisParams params_;
    double inner_d_;
    double outer_d_;
    // even alpha
    std::int64_t lo_int_ = 0;
    std::int64_t hi_int_ = 0;
    // odd alpha
    double lo_d_ = 0, hi_d_ = 0, eta_ = 0;
    Rational lo_exact_, hi_exact_;
    HighFloat lo_hp_, hi_hp_;
};

ShellSide shell_test(const LatticePoint& m, const ShellQuery& q);

std::uint64_t squared_norm(const std::vector<std::int64_t>& z);

} // namespace heis
