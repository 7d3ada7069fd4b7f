#pragma once

#include <optional>
#include <vector>

namespace heis {

enum class Location { Pole, Equator };

// Eigenvalues of the graph Hessian at a critical point of the unit sphere.
// nullopt marks an entry whose second derivative does not exist.
struct CurvatureReport {
    Location location;
    int alpha;
    int d;
    std::vector<std::optional<double>> eigenvalues;
    std::optional<double> gaussian;
};

// Graph h(z) = (1 - |z|^alpha)^(2/alpha) at z = 0.
CurvatureReport curvature_pole(int alpha, int d);

// Graph z1 = [(1 - |t|^(alpha/2))^(2/alpha) - |z'|^2]^(1/2) at z' = 0, t = 0.
// Coordinates are (z2, ..., z_{2d}, t).
CurvatureReport curvature_equator(int alpha, int d);

// Central-difference Hessian of the same graphs, evaluated in 50-digit
// arithmetic. Row-major, size 2d x 2d.
std::vector<std::vector<double>> fd_hessian(Location where, int alpha, int d, double step = 1e-12);

// Largest |closed form - finite difference| over defined entries, off-diagonal
// entries compared against 0.
double curvature_fd_discrepancy(const CurvatureReport& report, double step = 1e-12);

double unit_ball_volume_beta(int alpha, int d);
double unit_ball_volume_quadrature(int alpha, int d);

// Beta form, checked against quadrature; a gap above 1e-6 relative throws
// ConsistencyError.
double unit_ball_volume(int alpha, int d);

} // namespace heis
