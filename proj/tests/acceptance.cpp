// Acceptance run: one PASS/FAIL line per criterion.
#include "heis/core.hpp"
#include "heis/count.hpp"
#include "heis/energy.hpp"
#include "heis/fit.hpp"
#include "heis/geometry.hpp"
#include "heis/surface.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace heis;

namespace {

const double pi = 3.14159265358979323846;

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::ostringstream&)> check;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 6) {
    std::ostringstream o;
    o.precision(prec);
    o << v;
    return o.str();
}

bool c1_counting(std::ostringstream& msg) {
    const auto t0 = std::chrono::steady_clock::now();
    int cases = 0, bad = 0;
    for (int alpha : {2, 3, 4, 6})
        for (int d : {1, 2})
            for (int R : {1, 2, 3, 5, 7, 10, 15, 20}) {
                if (d == 2 && R > 10) continue;
                for (Rational delta : {Rational(0), Rational(1, 4), Rational(1, 2)}) {
                    const ShellQuery q(R, delta, HeisParams(alpha, d));
                    const auto f = fast_count(q), b = brute_count(q);
                    ++cases;
                    if (f.count != b.count) {
                        ++bad;
                        msg << "[alpha=" << alpha << " d=" << d << " R=" << R << " delta=" << to_string(delta)
                            << " fast=" << f.count << " brute=" << b.count << "] ";
                    }
                }
            }
    const double secs = seconds_since(t0);
    msg << cases << " cases, " << bad << " mismatches, " << fmt(secs, 3) << " s (target 120 s)";
    return bad == 0 && secs < 120;
}

bool c2_trivial(std::ostringstream& msg) {
    bool ok = true;
    for (int alpha = 2; alpha <= 12; ++alpha)
        for (int d : {1, 2}) {
            const ShellQuery q(Rational(1, 2), Rational(2, 5), HeisParams(alpha, d));
            const auto f = fast_count(q).count, b = brute_count(q).count;
            if (f != 0 || b != 0) {
                ok = false;
                msg << "[alpha=" << alpha << " d=" << d << " count=" << f << "/" << b << "] ";
            }
        }
    for (int alpha : {2, 4}) {
        const ShellQuery q(1, 0, HeisParams(alpha, 1));
        const auto f = fast_count(q).count, b = brute_count(q).count;
        msg << "alpha=" << alpha << " unit shell " << f << " (brute " << b << "); ";
        ok = ok && f == 6 && b == 6;
    }
    msg << "zero shells checked for alpha 2..12, d 1..2";
    return ok;
}

bool c3_volume(std::ostringstream& msg) {
    const double v2 = unit_ball_volume(2, 1), v4 = unit_ball_volume(4, 1);
    const double e2 = std::abs(v2 - pi) / pi, e4 = std::abs(v4 - pi * pi / 2) / (pi * pi / 2);
    double worst = 0;
    for (int alpha = 2; alpha <= 12; ++alpha)
        for (int d = 1; d <= 3; ++d) {
            const double b = unit_ball_volume_beta(alpha, d), q = unit_ball_volume_quadrature(alpha, d);
            worst = std::max(worst, std::abs(b - q) / b);
        }
    msg << "rel err pi " << fmt(e2, 3) << ", pi^2/2 " << fmt(e4, 3) << ", worst Beta vs quadrature " << fmt(worst, 3);
    return e2 <= 1e-8 && e4 <= 1e-8 && worst <= 1e-8;
}

bool c4_sharpness(std::ostringstream& msg) {
    const auto t0 = std::chrono::steady_clock::now();
    const HeisParams hp(2, 1);
    const DeltaRule rule = DeltaRule::parse("power:1/3");
    std::vector<Rational> Rs;
    for (Rational R = 16; R <= 1024; R *= 2) Rs.push_back(R);
    Rational top = 0;
    for (const auto& R : Rs) top = std::max(top, R + rule.delta_for(R));
    const SquaresTable table(hp.d(), table_extent({Rational(0), top}));
    std::vector<double> xs, ys;
    for (const auto& R : Rs) {
        xs.push_back(to_double(R));
        ys.push_back(static_cast<double>(fast_count(ShellQuery(R, rule.delta_for(R), hp), table).count));
    }
    const auto fit = fit_loglog(xs, ys);
    const double secs = seconds_since(t0);
    msg << "slope " << fmt(fit.slope) << " (want 8/3 +- 0.2), " << fmt(secs, 3) << " s (target 300 s)";
    return std::abs(fit.slope - 8.0 / 3) <= 0.2 && secs < 300;
}

bool c5_error_term(std::ostringstream& msg) {
    const HeisParams hp(2, 1);
    std::vector<double> scaled;
    for (Rational R = 16; R <= 512; R *= 2) {
        const double r = to_double(R);
        scaled.push_back(std::abs(error_term(R, hp)) / (r * r));
    }
    std::vector<double> sorted = scaled;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    const double ratio = sorted.back() / median;
    msg << "|E(R)|/R^2 =";
    for (double v : scaled) msg << ' ' << fmt(v, 4);
    msg << "; max/median " << fmt(ratio, 4) << " (limit 10)";
    return ratio <= 10;
}

bool c6_decay(std::ostringstream& msg) {
    struct Sweep {
        const char* where;
        int alpha;
        std::array<double, 3> dir;
        double want, tol;
    };
    const Sweep sweeps[] = {
        {"pole", 4, {0, 0, 1}, -0.5, 0.12},    {"pole", 8, {0, 0, 1}, -0.25, 0.12},
        {"pole", 2, {0, 0, 1}, -1.0, 0.15},    {"equator", 4, {1, 0, 0}, -0.5, 0.12},
        {"equator", 8, {1, 0, 0}, -0.5, 0.12},
    };
    const auto mags = dyadic_magnitudes(8, 256);
    bool ok = true;
    for (const auto& s : sweeps) {
        SurfaceParam p;
        p.alpha = s.alpha;
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = decay_sweep(s.dir, mags, p);
        const double secs = seconds_since(t0);
        const bool pass = !r.degenerate && std::abs(r.fit.slope - s.want) <= s.tol && secs < 300;
        ok = ok && pass;
        msg << s.where << " alpha=" << s.alpha << " slope " << fmt(r.fit.slope, 4) << " (want " << s.want << " +- "
            << s.tol << ", " << fmt(secs, 3) << " s)" << (pass ? "" : " MISS") << "; ";
    }
    return ok;
}

bool c7_decay_consistency(std::ostringstream& msg) {
    bool ok = true;
    double worst_doubling = 0, worst_conj = 0, worst_rot = 0;
    for (int alpha : {2, 4, 8}) {
        SurfaceParam p;
        p.alpha = alpha;
        SurfaceParam p2 = p;
        p2.resolution *= 2;
        p2.oversample *= 2;
        for (auto xi : std::vector<std::array<double, 3>>{{0, 0, 8}, {0, 0, 128}, {32, 0, 0}, {12, 5, 20}}) {
            const auto a = sigma_hat(xi, p), b = sigma_hat(xi, p2);
            const double rel = std::abs(std::abs(a.value) - std::abs(b.value)) / a.est_error;
            worst_doubling = std::max(worst_doubling, rel);
            ok = ok && rel < 3;

            const auto m = sigma_hat({-xi[0], -xi[1], -xi[2]}, p);
            const double conj = std::abs(m.value - std::conj(a.value));
            worst_conj = std::max(worst_conj, conj);
            ok = ok && conj <= 1e-10;

            const double th = 0.7;
            const std::array<double, 3> rot{std::cos(th) * xi[0] - std::sin(th) * xi[1],
                                            std::sin(th) * xi[0] + std::cos(th) * xi[1], xi[2]};
            const auto r = sigma_hat(rot, p);
            const double diff = std::abs(std::abs(r.value) - std::abs(a.value));
            const double tol = std::max(a.est_error, r.est_error);
            worst_rot = std::max(worst_rot, diff / tol);
            ok = ok && diff <= tol;
        }
    }
    msg << "doubling max " << fmt(worst_doubling, 3) << "x est_error (limit 3), conjugate max " << fmt(worst_conj, 3)
        << " (limit 1e-10), rotation max " << fmt(worst_rot, 3) << "x est_error (limit 1)";
    return ok;
}

bool c8_energy_oracle(std::ostringstream& msg) {
    bool ok = true;
    double worst = 0;
    for (std::int64_t q : {4, 8})
        for (Rational tau : {Rational(4, 5), Rational(1)}) {
            const auto cfg = make_energy_config(q, 4, tau);
            const double g = energy_grouped(cfg).value, d = energy_direct(cfg).value;
            worst = std::max(worst, std::abs(g - d) / std::abs(d));
        }
    ok = worst <= 1e-9;
    const auto cfg = make_energy_config(16, 4, 1);
    const BoxSet bs = build_box_set(cfg);
    const auto mc = box_self_integral_mc({bs.W.value, bs.W.value, bs.H.value}, to_double(cfg.s), 1000000, 20240601);
    const double mc_term = mc.value / (static_cast<double>(bs.N) * bs.V.value * bs.V.value);
    const double st = self_term(cfg);
    const double rel = std::abs(mc_term - st) / st;
    msg << "grouped vs direct worst rel " << fmt(worst, 3) << " (limit 1e-9); self_term " << fmt(st, 8)
        << " vs Monte Carlo " << fmt(mc_term, 8) << ", rel " << fmt(rel, 3) << " (limit 0.05)";
    return ok && rel <= 0.05;
}

bool c9_energy_bound(std::ostringstream& msg) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (int alpha : {2, 4, 8}) {
        const Rational tm = tau_max(alpha);
        const auto rows = boundedness_scan(alpha, {tm}, {16, 81, 256, 625});
        msg << "alpha=" << alpha << " tau=" << to_string(tm) << ":";
        for (const auto& r : rows) {
            msg << ' ' << fmt(r.result.value, 5);
            if (r.ratio_first && *r.ratio_first > 2.0) ok = false;
            if (r.ratio_prev && *r.ratio_prev > 1.2) ok = false;
        }
        double worst_prev = 0, worst_first = 0;
        for (const auto& r : rows) {
            if (r.ratio_prev) worst_prev = std::max(worst_prev, *r.ratio_prev);
            if (r.ratio_first) worst_first = std::max(worst_first, *r.ratio_first);
        }
        msg << " (max successive " << fmt(worst_prev, 4) << ", max vs q=16 " << fmt(worst_first, 4) << "); ";
    }
    const double secs = seconds_since(t0);
    msg << fmt(secs, 3) << " s (target 600 s)";
    return ok && secs < 600;
}

std::string show(const CurvatureReport& r) {
    std::string s = "(";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        if (i) s += ",";
        s += r.eigenvalues[i] ? fmt(*r.eigenvalues[i]) : "undefined";
    }
    return s + ")";
}

bool c10_curvature(std::ostringstream& msg) {
    bool ok = true;
    auto near = [](const CurvatureReport& r, std::vector<std::optional<double>> want) {
        if (r.eigenvalues.size() != want.size()) return false;
        for (std::size_t i = 0; i < want.size(); ++i) {
            if (want[i].has_value() != r.eigenvalues[i].has_value()) return false;
            if (want[i] && std::abs(*want[i] - *r.eigenvalues[i]) > 1e-9) return false;
        }
        return true;
    };
    auto expect = [&](const CurvatureReport& r, std::vector<std::optional<double>> want) {
        const bool values = near(r, want);
        const double fd = curvature_fd_discrepancy(r);
        const bool pass = values && fd <= 1e-7;
        ok = ok && pass;
        msg << (r.location == Location::Pole ? "pole" : "equator") << " alpha=" << r.alpha << ' ' << show(r)
            << " fd " << fmt(fd, 2) << (pass ? "" : " MISS") << "; ";
    };
    for (int alpha : {4, 6, 8}) expect(curvature_pole(alpha, 1), {0.0, 0.0});
    expect(curvature_pole(2, 1), {-2.0, -2.0});
    expect(curvature_equator(4, 1), {-1.0, -1.0});
    for (int alpha : {6, 8}) expect(curvature_equator(alpha, 1), {-1.0, 0.0});
    expect(curvature_equator(3, 1), {-1.0, std::nullopt});
    return ok;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool c11_determinism(std::ostringstream& msg) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "heislab_acceptance";
    std::filesystem::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"count", "count --alpha 3 --d 2 --R 10 --delta 1/4"},
        {"scan", "scan --alpha 2"},
        {"intersect", "intersect --alpha 2 --R 5 --delta 1/2 --center 1,0,0"},
        {"decay", "decay --alpha 4 --direction 1,0,1 --xi 8..64"},
        {"energy", "energy --alpha 4 --q 16,81 --verify --seed 7"},
        {"curvature", "curvature --alpha 6 --d 2"},
        {"volume", "volume --alpha 5 --d 3"},
    };
    bool ok = true;
    for (const auto& [name, args] : commands)
        for (const char* format : {"csv", "json"}) {
            std::vector<std::string> outs;
            for (int threads : {1, 1, 8, 8}) {
                const auto out = dir / (name + "_" + format + "_" + std::to_string(outs.size()));
                const std::string cmd = std::string(HEISLAB_PATH) + " " + args + " --format " + format +
                                        " --threads " + std::to_string(threads) + " --out " + out.string();
                if (std::system(cmd.c_str()) != 0) {
                    msg << "[" << name << " exited nonzero] ";
                    ok = false;
                }
                outs.push_back(slurp(out));
            }
            const bool same = !outs[0].empty() && std::all_of(outs.begin(), outs.end(), [&](auto& o) { return o == outs[0]; });
            if (!same) {
                msg << "[" << name << " " << format << " differs] ";
                ok = false;
            }
        }
    msg << commands.size() << " commands x {csv, json} x threads {1, 1, 8, 8}";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all = {
        {1, "fast_count equals brute_count", c1_counting},
        {2, "trivial shells", c2_trivial},
        {3, "unit ball volume", c3_volume},
        {4, "sharpness slope", c4_sharpness},
        {5, "error term boundedness", c5_error_term},
        {6, "decay slopes", c6_decay},
        {7, "decay internal consistency", c7_decay_consistency},
        {8, "energy oracle equivalence", c8_energy_oracle},
        {9, "energy boundedness", c9_energy_bound},
        {10, "principal curvatures", c10_curvature},
        {11, "CLI determinism", c11_determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        std::ostringstream msg;
        bool pass = false;
        try {
            pass = c.check(msg);
        } catch (const std::exception& e) {
            msg << " threw: " << e.what();
        }
        std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << msg.str() << std::endl;
        if (!pass) ++failed;
    }
    return failed ? 1 : 0;
}
