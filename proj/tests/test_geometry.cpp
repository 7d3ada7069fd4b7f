#include "heis/errors.hpp"
#include "heis/geometry.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace heis;

TEST_SUITE("geometry") {

TEST_CASE("pole") {
    const auto r4 = curvature_pole(4, 1);
    CHECK(r4.eigenvalues.size() == 2);
    CHECK(*r4.eigenvalues[0] == 0);
    CHECK(*r4.gaussian == 0);
    const auto r2 = curvature_pole(2, 1);
    CHECK(*r2.eigenvalues[0] == -2);
    CHECK(*r2.eigenvalues[1] == -2);
    CHECK(*r2.gaussian == 4);
    const auto r6 = curvature_pole(6, 2);
    CHECK(r6.eigenvalues.size() == 4);
    for (const auto& e : r6.eigenvalues) CHECK(*e == 0);
}

TEST_CASE("equator") {
    const auto r6 = curvature_equator(6, 1);
    CHECK(*r6.eigenvalues[0] == -1);
    CHECK(*r6.eigenvalues[1] == 0);
    const auto r3 = curvature_equator(3, 1);
    CHECK(*r3.eigenvalues[0] == -1);
    CHECK_FALSE(r3.eigenvalues[1].has_value());
    CHECK_FALSE(r3.gaussian.has_value());
    CHECK_FALSE(curvature_equator(2, 2).eigenvalues[3].has_value());
    const auto r4 = curvature_equator(4, 2);
    CHECK(r4.eigenvalues.size() == 4);
    CHECK(*r4.gaussian != 0);
}

TEST_CASE("alpha 4 equator t-direction is the second derivative of (1 - t^2)^(1/4)") {
    // (1 - t^2)^(1/4) = 1 - t^2 / 4 + O(t^4)
    CHECK(*curvature_equator(4, 1).eigenvalues[1] == -0.5);
    const auto H = fd_hessian(Location::Equator, 4, 1);
    CHECK(std::abs(H[1][1] + 0.5) < 1e-9);
}

TEST_CASE("finite differences agree with closed forms") {
    for (int alpha = 2; alpha <= 12; ++alpha)
        for (int d = 1; d <= 3; ++d) {
            CAPTURE(alpha);
            CAPTURE(d);
            CHECK(curvature_fd_discrepancy(curvature_pole(alpha, d)) < 1e-9);
            // for alpha = 5 the t-profile is |t|^(5/2) and the second difference converges like sqrt(h)
            const double step = alpha == 5 ? 1e-20 : 1e-12;
            CHECK(curvature_fd_discrepancy(curvature_equator(alpha, d), step) < 1e-9);
        }
}

TEST_CASE("a 1e-4 step leaves O(h) error where the profile is C^2 only") {
    // (1 - |t|^3)^(1/6) has second difference -h/3
    CHECK(curvature_fd_discrepancy(curvature_equator(6, 1), 1e-4) == doctest::Approx(1e-4 / 3).epsilon(1e-3));
}

TEST_CASE("undefined second derivatives") {
    // (1 - |t|)^(1/2) has a corner, (1 - |t|^1.5)^(1/3) a cusp in the second derivative
    const auto H2 = fd_hessian(Location::Equator, 2, 1, 1e-8);
    CHECK(std::abs(H2[1][1]) > 1e6);
    const auto H3a = fd_hessian(Location::Equator, 3, 1, 1e-6);
    const auto H3b = fd_hessian(Location::Equator, 3, 1, 1e-8);
    CHECK(std::abs(H3b[1][1]) > 5 * std::abs(H3a[1][1]));
}

TEST_CASE("volumes") {
    CHECK(std::abs(unit_ball_volume(2, 1) - oracle::pi) < 1e-8 * oracle::pi);
    CHECK(std::abs(unit_ball_volume(4, 1) - oracle::pi * oracle::pi / 2) < 1e-8 * oracle::pi * oracle::pi / 2);
    for (int alpha = 2; alpha <= 12; ++alpha)
        for (int d = 1; d <= 3; ++d) {
            const double b = unit_ball_volume_beta(alpha, d), q = unit_ball_volume_quadrature(alpha, d);
            CHECK(std::abs(b - q) <= 1e-8 * b);
        }
    CHECK(unit_ball_volume(2, 1) * 1e4 == doctest::Approx(oracle::pi * 1e4));
    CHECK_THROWS_AS(unit_ball_volume(1, 1), ConfigError);
}

TEST_CASE("volume does not decrease with alpha") {
    // |z|^alpha + |t|^(alpha/2) <= 1 loosens as alpha grows, towards the cylinder of volume 2 pi^d / d!
    for (int d = 1; d <= 3; ++d)
        for (int alpha = 2; alpha < 12; ++alpha) CHECK(unit_ball_volume(alpha + 1, d) >= unit_ball_volume(alpha, d));
    CHECK(unit_ball_volume(12, 1) < 2 * oracle::pi);
}

}
