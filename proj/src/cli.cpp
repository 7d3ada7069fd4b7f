#include "heis/cli.hpp"

#include "heis/count.hpp"
#include "heis/energy.hpp"
#include "heis/errors.hpp"
#include "heis/fit.hpp"
#include "heis/geometry.hpp"
#include "heis/surface.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

namespace heis {

namespace {

using json = nlohmann::json;

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string num(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1) return to_string(r);
    return num(to_double(r));
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    Table table;
    json results;
};

// --- parameter access -------------------------------------------------------

class Params {
public:
    explicit Params(const std::map<std::string, std::string>& p) : p_(p) {}

    std::string str(const std::string& key, const std::string& def) const {
        auto it = p_.find(key);
        return it == p_.end() || it->second.empty() ? def : it->second;
    }
    bool has(const std::string& key) const {
        auto it = p_.find(key);
        return it != p_.end() && !it->second.empty();
    }
    int integer(const std::string& key, int def) const {
        if (!has(key)) return def;
        const Rational r = parse_rational(p_.at(key));
        if (boost::multiprecision::denominator(r) != 1) throw ConfigError("--" + key + " must be an integer");
        if (r > 1000000000 || r < -1000000000) throw ConfigError("--" + key + " out of range");
        return static_cast<int>(boost::multiprecision::numerator(r));
    }
    double real(const std::string& key, double def) const {
        return has(key) ? to_double(parse_rational(p_.at(key))) : def;
    }
    bool flag(const std::string& key) const { return str(key, "false") == "true"; }

private:
    const std::map<std::string, std::string>& p_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string trim(std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

// "v", "lo..hi", "lo..hi dyadic" or "lo..hi:steps geometric".
std::vector<Rational> parse_grid(const std::string& text) {
    const std::string t = trim(text);
    const auto dots = t.find("..");
    if (dots == std::string::npos) return {parse_rational(t)};
    const Rational lo = parse_rational(t.substr(0, dots));
    std::string rest = trim(t.substr(dots + 2));
    std::string kind = "dyadic";
    if (auto sp = rest.find_first_of(" \t"); sp != std::string::npos) {
        kind = trim(rest.substr(sp));
        rest = trim(rest.substr(0, sp));
    }
    int steps = 0;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
        const Rational st = parse_rational(rest.substr(colon + 1));
        if (boost::multiprecision::denominator(st) != 1 || st < 2 || st > 100000)
            throw ConfigError("grid steps must be an integer in [2, 100000]");
        steps = static_cast<int>(boost::multiprecision::numerator(st));
        rest = rest.substr(0, colon);
        if (kind == "dyadic" && t.find("dyadic") == std::string::npos) kind = "geometric";
    }
    const Rational hi = parse_rational(rest);
    if (lo <= 0 || hi < lo) throw ConfigError("grid needs 0 < lo <= hi");
    std::vector<Rational> out;
    if (kind == "dyadic") {
        if (steps) throw ConfigError("dyadic grids take no step count");
        for (Rational v = lo; v <= hi; v *= 2) out.push_back(v);
    } else if (kind == "geometric") {
        if (!steps) throw ConfigError("geometric grids need lo..hi:steps");
        const double l = to_double(lo), h = to_double(hi);
        out.push_back(lo);
        for (int i = 1; i + 1 < steps; ++i)
            out.push_back(rational_from_double(l * std::pow(h / l, double(i) / (steps - 1))));
        out.push_back(hi);
    } else {
        throw ConfigError("unknown grid kind '" + kind + "'");
    }
    return out;
}

std::vector<double> parse_reals(const std::string& text, std::size_t expect) {
    std::vector<double> v;
    for (const auto& part : split(text, ',')) v.push_back(to_double(parse_rational(part)));
    if (expect && v.size() != expect)
        throw ConfigError("expected " + std::to_string(expect) + " comma-separated values, got '" + text + "'");
    return v;
}

HeisParams heis_params(const Params& p, int default_alpha) {
    return HeisParams(p.integer("alpha", default_alpha), p.integer("d", 1));
}

Exec exec_of(const ExperimentConfig& c) { return c.threads > 1 ? Exec::Parallel : Exec::Serial; }

const char* method_name(CountMethod m) { return m == CountMethod::Brute ? "brute" : "fast"; }

// --- commands ---------------------------------------------------------------

Output cmd_count(const ExperimentConfig& c, json& cfg) {
    Params p(c.parameters);
    const HeisParams hp = heis_params(p, 4);
    if (!p.has("R")) throw ConfigError("count needs --R");
    const Rational R = parse_rational(p.str("R", ""));
    const DeltaRule rule = DeltaRule::parse(p.str("delta", "0"));
    const Rational delta = rule.delta_for(R);
    const std::string method = p.str("method", "fast");
    if (method != "fast" && method != "brute") throw ConfigError("--method must be fast or brute");
    cfg["alpha"] = hp.alpha();
    cfg["d"] = hp.d();
    cfg["R"] = to_string(R);
    cfg["delta"] = rule.str();
    cfg["method"] = method;
    cfg["verify"] = p.flag("verify");

    const ShellQuery q(R, delta, hp);
    const CountResult res = method == "fast" ? fast_count(q, exec_of(c)) : brute_count(q, exec_of(c));
    if (p.flag("verify")) {
        const CountResult other = method == "fast" ? brute_count(q, exec_of(c)) : fast_count(q, exec_of(c));
        if (other.count != res.count)
            throw ConsistencyError("fast and brute counts differ: " + std::to_string(res.count) + " vs " +
                                   std::to_string(other.count));
    }
    Output o;
    o.table.header = {"alpha", "d", "R", "delta", "method", "count", "boundary_escalations"};
    o.table.rows.push_back({std::to_string(hp.alpha()), std::to_string(hp.d()), num(R), num(delta),
                            method_name(res.method), std::to_string(res.count),
                            std::to_string(res.boundary_escalations)});
    o.results = {{"count", res.count},
                 {"R", to_string(R)},
                 {"delta", to_string(delta)},
                 {"method", method_name(res.method)},
                 {"boundary_escalations", res.boundary_escalations}};
    return o;
}

Output cmd_scan(const ExperimentConfig& c, json& cfg) {
    Params p(c.parameters);
    const HeisParams hp = heis_params(p, 2);
    const std::vector<Rational> grid = parse_grid(p.str("R", "16..1024 dyadic"));
    const DeltaRule rule = DeltaRule::parse(p.str("delta", "power:1/3"));
    cfg["alpha"] = hp.alpha();
    cfg["d"] = hp.d();
    cfg["R"] = p.str("R", "16..1024 dyadic");
    cfg["delta"] = rule.str();
    cfg["verify"] = p.flag("verify");

    // one table covers the whole sweep
    Rational top = 0;
    for (const auto& R : grid) top = std::max(top, R + rule.delta_for(R));
    const SquaresTable table(hp.d(), table_extent({Rational(0), top}));

    std::vector<double> xs, ys;
    std::vector<std::pair<Rational, CountResult>> rows;
    for (const auto& R : grid) {
        const ShellQuery q(R, rule.delta_for(R), hp);
        CountResult res = fast_count(q, table, exec_of(c));
        if (p.flag("verify") && brute_count(q, exec_of(c)).count != res.count)
            throw ConsistencyError("fast and brute counts differ at R = " + to_string(R));
        xs.push_back(to_double(R));
        ys.push_back(static_cast<double>(res.count));
        rows.emplace_back(R, res);
    }
    const SweepResult fit = fit_loglog(xs, ys);
    const double g = to_double(gamma(hp.alpha(), hp.n()).gamma);
    const double bound = bound_exponent(hp.n(), g);

    Output o;
    o.table.header = {"alpha", "d", "R", "delta", "count", "boundary_escalations", "slope", "intercept",
                      "max_residual", "dropped", "bound_exponent"};
    json jr = json::array();
    for (const auto& [R, res] : rows) {
        o.table.rows.push_back({std::to_string(hp.alpha()), std::to_string(hp.d()), num(R),
                                num(res.query.delta()), std::to_string(res.count),
                                std::to_string(res.boundary_escalations), num(fit.slope), num(fit.intercept),
                                num(fit.max_residual), std::to_string(fit.dropped), num(bound)});
        jr.push_back({{"R", to_string(R)},
                      {"delta", to_string(res.query.delta())},
                      {"count", res.count},
                      {"boundary_escalations", res.boundary_escalations}});
    }
    o.results = {{"rows", jr},
                 {"fit",
                  {{"slope", fit.slope},
                   {"intercept", fit.intercept},
                   {"max_residual", fit.max_residual},
                   {"dropped", fit.dropped}}},
                 {"bound_exponent", bound}};
    return o;
}

Output cmd_intersect(const ExperimentConfig& c, json& cfg) {
    Params p(c.parameters);
    const HeisParams hp = heis_params(p, 4);
    if (!p.has("R")) throw ConfigError("intersect needs --R");
    const Rational R = parse_rational(p.str("R", ""));
    const DeltaRule rule = DeltaRule::parse(p.str("delta", "0"));
    const ShellQuery q(R, rule.delta_for(R), hp);
    cfg["alpha"] = hp.alpha();
    cfg["d"] = hp.d();
    cfg["R"] = to_string(R);
    cfg["delta"] = rule.str();

    const std::uint64_t count = fast_count(q, exec_of(c)).count;
    const std::uint64_t pairs = pair_count(q, exec_of(c));
    Output o;
    o.table.header = {"alpha", "d", "R", "delta", "count", "pair_count", "center", "two_center_count"};
    std::string center_text;
    json two = nullptr;
    std::string two_text;
    if (p.has("center")) {
        LatticePoint pt;
        for (const auto& part : split(p.str("center", ""), ',')) {
            const Rational v = parse_rational(part);
            if (boost::multiprecision::denominator(v) != 1) throw ConfigError("--center needs integer coordinates");
            pt.z.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(v)));
        }
        if (pt.z.size() != static_cast<std::size_t>(2 * hp.d() + 1))
            throw ConfigError("--center needs 2d + 1 coordinates");
        pt.t = pt.z.back();
        pt.z.pop_back();
        const std::uint64_t tc = count_two_centers(q, pt, exec_of(c));
        cfg["center"] = p.str("center", "");
        for (std::size_t i = 0; i < pt.z.size(); ++i) center_text += std::to_string(pt.z[i]) + ";";
        center_text += std::to_string(pt.t);
        two = tc;
        two_text = std::to_string(tc);
    }
    o.table.rows.push_back({std::to_string(hp.alpha()), std::to_string(hp.d()), num(R), num(q.delta()),
                            std::to_string(count), std::to_string(pairs), center_text, two_text});
    o.results = {{"count", count}, {"pair_count", pairs}, {"two_center_count", two}};
    return o;
}

Output cmd_decay(const ExperimentConfig& c, json& cfg) {
    Params p(c.parameters);
    SurfaceParam sp;
    sp.alpha = p.integer("alpha", 4);
    sp.resolution = p.integer("resolution", sp.resolution);
    sp.oversample = p.real("oversample", sp.oversample);
    sp.validate();
    const auto dir = parse_reals(p.str("direction", "0,0,1"), 3);
    std::vector<double> mags;
    for (const auto& r : parse_grid(p.str("xi", "8..256 dyadic"))) mags.push_back(to_double(r));
    const std::string mode = p.str("mode", "envelope");
    if (mode != "envelope" && mode != "point") throw ConfigError("--mode must be envelope or point");
    cfg["alpha"] = sp.alpha;
    cfg["direction"] = {dir[0], dir[1], dir[2]};
    cfg["xi"] = p.str("xi", "8..256 dyadic");
    cfg["resolution"] = sp.resolution;
    cfg["oversample"] = sp.oversample;
    cfg["mode"] = mode;

    const DecayResult r = decay_sweep({dir[0], dir[1], dir[2]}, mags, sp,
                                      mode == "envelope" ? DecayMode::Envelope : DecayMode::Point, exec_of(c));
    Output o;
    o.table.header = {"alpha", "dir_x", "dir_y", "dir_z", "xi_mag", "re", "im", "abs", "est_error"};
    json js = json::array();
    for (const auto& s : r.samples) {
        const double m = std::sqrt(s.xi[0] * s.xi[0] + s.xi[1] * s.xi[1] + s.xi[2] * s.xi[2]);
        o.table.rows.push_back({std::to_string(sp.alpha), num(r.direction[0]), num(r.direction[1]),
                                num(r.direction[2]), num(m), num(s.value.real()), num(s.value.imag()),
                                num(std::abs(s.value)), num(s.est_error)});
        js.push_back({{"xi_mag", m},
                      {"re", s.value.real()},
                      {"im", s.value.imag()},
                      {"abs", std::abs(s.value)},
                      {"est_error", s.est_error},
                      {"flagged", s.flagged}});
    }
    json fit = nullptr;
    if (!r.degenerate)
        fit = {{"slope", r.fit.slope},
               {"intercept", r.fit.intercept},
               {"max_residual", r.fit.max_residual},
               {"dropped", r.fit.dropped}};
    o.results = {{"samples", js},
                 {"magnitudes", r.magnitudes},
                 {"amplitude", r.amplitude},
                 {"fit", fit},
                 {"degenerate", r.degenerate},
                 {"flagged", r.flagged},
                 {"gamma", to_string(gamma(sp.alpha, 3).gamma)}};
    return o;
}

Output cmd_energy(const ExperimentConfig& c, json& cfg) {
    Params p(c.parameters);
    const int alpha = p.integer("alpha", 4);
    std::vector<Rational> taus;
    const std::string tau_text = p.str("tau", "max");
    for (const auto& part : split(tau_text, ','))
        taus.push_back(trim(part) == "max" ? tau_max(alpha, 3) : parse_rational(part));
    std::vector<std::int64_t> qs;
    for (const auto& part : split(p.str("q", "16,81,256,625"), ',')) {
        const Rational v = parse_rational(part);
        if (boost::multiprecision::denominator(v) != 1 || v < 1 || v > 100000)
            throw ConfigError("--q entries must be integers in [1, 100000]");
        qs.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(v)));
    }
    cfg["alpha"] = alpha;
    json jt = json::array();
    for (const auto& t : taus) jt.push_back(to_string(t));
    cfg["tau"] = jt;
    cfg["q"] = qs;
    cfg["verify"] = p.flag("verify");

    const auto rows = boundedness_scan(alpha, taus, qs, exec_of(c));
    json checks = json::array();
    if (p.flag("verify")) {
        for (const auto& row : rows) {
            const BoxSet bs = build_box_set(row.result.config);
            const double N = static_cast<double>(bs.N);
            if (N * N <= static_cast<double>(kDirectBudget) / 16) {
                const double direct = energy_direct(row.result.config, exec_of(c)).value;
                const double rel = std::abs(direct - row.result.value) / row.result.value;
                if (rel > 1e-9) throw ConsistencyError("grouped and direct energies differ at q = " + std::to_string(row.q));
                checks.push_back({{"q", row.q}, {"tau", to_string(row.tau)}, {"check", "direct"}, {"rel_diff", rel}});
            }
            const double s = to_double(row.result.config.s);
            const double D = box_self_integral({bs.W.value, bs.W.value, bs.H.value}, s);
            const auto mc = box_self_integral_mc({bs.W.value, bs.W.value, bs.H.value}, s, 1000000, c.seed);
            const double rel = std::abs(mc.value - D) / D;
            if (rel > 0.05) throw ConsistencyError("self term disagrees with Monte Carlo at q = " + std::to_string(row.q));
            checks.push_back({{"q", row.q}, {"tau", to_string(row.tau)}, {"check", "monte_carlo"}, {"rel_diff", rel}});
        }
    }

    Output o;
    o.table.header = {"alpha", "tau", "q", "s", "value", "ratio_prev", "ratio_first"};
    for (PairCase pc : kAllCases) o.table.header.push_back(case_name(pc));
    o.table.header.push_back("prox_refined");
    json jr = json::array();
    for (const auto& row : rows) {
        std::vector<std::string> line = {std::to_string(alpha), num(row.tau), std::to_string(row.q),
                                         num(row.result.config.s), num(row.result.value),
                                         row.ratio_prev ? num(*row.ratio_prev) : "",
                                         row.ratio_first ? num(*row.ratio_first) : ""};
        json cases = json::object();
        for (PairCase pc : kAllCases) {
            line.push_back(num(row.result.case_breakdown.at(case_name(pc))));
            cases[case_name(pc)] = row.result.case_breakdown.at(case_name(pc));
        }
        line.push_back(std::to_string(row.result.prox_refined));
        o.table.rows.push_back(std::move(line));
        jr.push_back({{"tau", to_string(row.tau)},
                      {"q", row.q},
                      {"s", to_string(row.result.config.s)},
                      {"value", row.result.value},
                      {"ratio_prev", row.ratio_prev ? json(*row.ratio_prev) : json(nullptr)},
                      {"ratio_first", row.ratio_first ? json(*row.ratio_first) : json(nullptr)},
                      {"case_breakdown", cases},
                      {"prox_refined", row.result.prox_refined}});
    }
    o.results = {{"rows", jr}, {"tau_max", to_string(tau_max(alpha, 3))}, {"checks", checks}};
    return o;
}

Output cmd_curvature(const ExperimentConfig& c, json& cfg) {
    Params p(c.parameters);
    const int alpha = p.integer("alpha", 4), d = p.integer("d", 1);
    cfg["alpha"] = alpha;
    cfg["d"] = d;
    Output o;
    o.table.header = {"location", "alpha", "d", "eigenvalues", "gaussian", "fd_discrepancy"};
    o.results = json::array();
    for (const auto& rep : {curvature_pole(alpha, d), curvature_equator(alpha, d)}) {
        std::string ev;
        json jev = json::array();
        for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
            if (i) ev += ';';
            ev += rep.eigenvalues[i] ? num(*rep.eigenvalues[i]) : "undefined";
            jev.push_back(rep.eigenvalues[i] ? json(*rep.eigenvalues[i]) : json("undefined"));
        }
        const double fd = curvature_fd_discrepancy(rep);
        const char* loc = rep.location == Location::Pole ? "pole" : "equator";
        o.table.rows.push_back({loc, std::to_string(alpha), std::to_string(d), ev,
                                rep.gaussian ? num(*rep.gaussian) : "undefined", num(fd)});
        o.results.push_back({{"location", loc},
                             {"eigenvalues", jev},
                             {"gaussian", rep.gaussian ? json(*rep.gaussian) : json("undefined")},
                             {"fd_discrepancy", fd}});
    }
    return o;
}

Output cmd_volume(const ExperimentConfig& c, json& cfg) {
    Params p(c.parameters);
    const int alpha = p.integer("alpha", 2), d = p.integer("d", 1);
    cfg["alpha"] = alpha;
    cfg["d"] = d;
    const double v = unit_ball_volume(alpha, d);
    const double qv = unit_ball_volume_quadrature(alpha, d);
    Output o;
    o.table.header = {"alpha", "d", "volume", "volume_quadrature", "rel_diff"};
    const double rel = std::abs(v - qv) / v;
    o.table.rows.push_back({std::to_string(alpha), std::to_string(d), num(v), num(qv), num(rel)});
    o.results = {{"volume", v}, {"volume_quadrature", qv}, {"rel_diff", rel}};
    return o;
}

void write_csv(std::ostream& out, const Table& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

} // namespace

int run(const ExperimentConfig& config, std::ostream& err) {
    static const std::map<std::string, std::function<Output(const ExperimentConfig&, json&)>> commands = {
        {"count", cmd_count},   {"scan", cmd_scan},           {"intersect", cmd_intersect},
        {"decay", cmd_decay},   {"energy", cmd_energy},       {"curvature", cmd_curvature},
        {"volume", cmd_volume}};
    try {
        auto it = commands.find(config.command);
        if (it == commands.end()) throw ConfigError("unknown command '" + config.command + "'");
        if (config.threads < 1) throw ConfigError("--threads must be >= 1");
        omp_set_num_threads(config.threads);

        json cfg = {{"command", config.command},
                    {"seed", config.seed},
                    {"format", config.format == Format::Csv ? "csv" : "json"}};
        const auto t0 = std::chrono::steady_clock::now();
        Output o = it->second(config, cfg);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

        std::ostringstream buf;
        if (config.format == Format::Csv) {
            write_csv(buf, o.table);
        } else {
            json doc = {{"config", cfg}, {"results", o.results}, {"timings_ms", json::object()}};
            if (config.timings) doc["timings_ms"]["total"] = ms;
            buf << doc.dump(2) << '\n';
        }
        if (config.output_path == "-") {
            std::cout << buf.str() << std::flush;
        } else {
            std::ofstream f(config.output_path, std::ios::binary);
            if (!f) throw ConfigError("cannot write to '" + config.output_path + "'");
            f << buf.str();
            if (!f) throw ConfigError("cannot write to '" + config.output_path + "'");
        }
        if (config.timings && config.format == Format::Csv) err << "total_ms=" << num(ms) << '\n';
        return kExitOk;
    } catch (const ConsistencyError& e) {
        err << "consistency failure: " << e.what() << '\n';
        return kExitConsistency;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitConfig;
    }
}

int run_main(int argc, const char* const* argv) {
    CLI::App app{"heislab: lattice points, surface decay and energies for Heisenberg spheres"};
    app.require_subcommand(1);
    ExperimentConfig config;
    std::string format = "csv";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--threads", config.threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", config.seed, "seed for Monte Carlo cross-checks");
        sub->add_option("--out", config.output_path, "output file, - for stdout");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--timings", config.timings, "record wall-clock timings");
    };
    auto opt = [&](CLI::App* sub, const std::string& name, const std::string& help) {
        sub->add_option_function<std::string>(
            "--" + name, [&config, name](const std::string& v) { config.parameters[name] = v; }, help);
    };
    auto flag = [&](CLI::App* sub, const std::string& name, const std::string& help) {
        sub->add_flag_function(
            "--" + name, [&config, name](std::int64_t) { config.parameters[name] = "true"; }, help);
    };

    struct Sub {
        const char* name;
        const char* help;
        std::vector<std::pair<const char*, const char*>> options;
        std::vector<std::pair<const char*, const char*>> flags;
    };
    const std::vector<Sub> subs = {
        {"count", "lattice points in one shell",
         {{"alpha", "norm exponent"}, {"d", "half z-dimension"}, {"R", "radius (exact rational)"},
          {"delta", "half-thickness or delta rule"}, {"method", "fast or brute"}},
         {{"verify", "cross-check against the other method"}}},
        {"scan", "counts over an R grid with a log-log fit",
         {{"alpha", "norm exponent"}, {"d", "half z-dimension"}, {"R", "lo..hi dyadic or lo..hi:steps geometric"},
          {"delta", "fixed:<v> or power:<e>"}},
         {{"verify", "cross-check each count by brute force"}}},
        {"intersect", "pair counts and two-center counts",
         {{"alpha", "norm exponent"}, {"d", "half z-dimension"}, {"R", "radius"}, {"delta", "half-thickness"},
          {"center", "second center z1,...,z2d,t"}},
         {}},
        {"decay", "Fourier decay of the surface measure",
         {{"alpha", "norm exponent"}, {"direction", "x,y,z"}, {"xi", "magnitude grid lo..hi"},
          {"resolution", "minimum nodes per dimension"}, {"oversample", "nodes per oscillation"},
          {"mode", "envelope or point"}},
         {}},
        {"energy", "energy boundedness scan",
         {{"alpha", "norm exponent"}, {"tau", "comma list, 'max' for tau_max"}, {"q", "comma list of scales"}},
         {{"verify", "direct-sum and Monte Carlo cross-checks"}}},
        {"curvature", "principal curvatures at pole and equator", {{"alpha", "norm exponent"}, {"d", "half z-dimension"}}, {}},
        {"volume", "unit ball volume", {{"alpha", "norm exponent"}, {"d", "half z-dimension"}}, {}},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        for (const auto& [n, h] : s.options) opt(sub, n, h);
        for (const auto& [n, h] : s.flags) flag(sub, n, h);
        common(sub);
        sub->callback([&config, sub] { config.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    config.format = format == "json" ? Format::Json : Format::Csv;
    return run(config, std::cerr);
}

} // namespace heis
