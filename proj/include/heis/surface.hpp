#pragma once

#include "heis/exec.hpp"
#include "heis/fit.hpp"
#include "heis/rational.hpp"

#include <array>
#include <complex>
#include <vector>

namespace heis {

// Surface of the unit sphere |z|^alpha + |t|^(alpha/2) = 1 in R^3.
struct SurfaceParam {
    int alpha = 4;
    int resolution = 256;  // minimum nodes per dimension
    double oversample = 8; // nodes per oscillation
    double tolerance = 1e-8;
    double max_xi = 512;

    void validate() const;
};

struct FourierSample {
    std::array<double, 3> xi{};
    std::complex<double> value;
    double est_error = 0;
    bool flagged = false; // est_error above tolerance
};

struct GammaExponent {
    int alpha;
    int n;
    Rational gamma;
};

GammaExponent gamma(int alpha, int n);

struct ProfilePoint {
    double rho;
    double t;
    double weight; // d(area)/d(phi), integrated over the angle
};

// Revolution chart over phi in [0, pi]. At the poles and the equator the
// weight is its one-sided limit, which is +inf where it diverges.
ProfilePoint profile(double phi, int alpha);

FourierSample sigma_hat(const std::array<double, 3>& xi, const SurfaceParam& cfg, Exec exec = Exec::Parallel);

double surface_area(const SurfaceParam& cfg, Exec exec = Exec::Parallel);

enum class DecayMode {
    Point,    // |sigma_hat| at each magnitude
    Envelope, // max over four offsets lambda + j/8, j = 0..3
};

inline constexpr double kNoiseFloor = 1e-13;
inline constexpr double kMinFitMagnitude = 8;

struct DecayResult {
    std::array<double, 3> direction{}; // normalized
    std::vector<double> magnitudes;
    std::vector<double> amplitude; // per magnitude, after the mode reduction
    std::vector<FourierSample> samples;
    SweepResult fit;
    bool degenerate = false;
    std::size_t flagged = 0;
};

DecayResult decay_sweep(const std::array<double, 3>& direction, const std::vector<double>& magnitudes,
                        const SurfaceParam& cfg, DecayMode mode = DecayMode::Envelope,
                        Exec exec = Exec::Parallel);

std::vector<double> dyadic_magnitudes(double lo, double hi);

} // namespace heis
