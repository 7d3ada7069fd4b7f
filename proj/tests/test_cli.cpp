#include "heis/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace heis;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("heislab_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ExperimentConfig make(const std::string& cmd, std::map<std::string, std::string> params, Format fmt = Format::Csv) {
    ExperimentConfig c;
    c.command = cmd;
    c.parameters = std::move(params);
    c.format = fmt;
    c.output_path = tmp_path(cmd + (fmt == Format::Csv ? ".csv" : ".json"));
    return c;
}

std::string run_to_string(ExperimentConfig c, int threads) {
    c.threads = threads;
    std::ostringstream err;
    REQUIRE(run(c, err) == kExitOk);
    return slurp(c.output_path);
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("count writes the six unit points") {
    const std::string out = run_to_string(make("count", {{"alpha", "4"}, {"d", "1"}, {"R", "1"}, {"delta", "0"}}), 1);
    CHECK(out == "alpha,d,R,delta,method,count,boundary_escalations\n4,1,1,0,fast,6,0\n");
}

TEST_CASE("volume in json") {
    const auto doc = nlohmann::json::parse(run_to_string(make("volume", {{"alpha", "2"}, {"d", "1"}}, Format::Json), 1));
    CHECK(std::abs(doc["results"]["volume"].get<double>() - 3.141592653589793) < 1e-8);
    CHECK(doc["config"]["command"] == "volume");
    CHECK(doc["timings_ms"].empty());
    ExperimentConfig c = make("volume", {{"alpha", "2"}}, Format::Json);
    c.timings = true;
    const auto timed = nlohmann::json::parse(run_to_string(c, 1));
    CHECK(timed["timings_ms"].contains("total"));
}

TEST_CASE("scan reports the fit") {
    const auto doc = nlohmann::json::parse(run_to_string(
        make("scan", {{"alpha", "2"}, {"R", "16..128 dyadic"}, {"delta", "power:1/3"}}, Format::Json), 1));
    CHECK(doc["results"]["rows"].size() == 4);
    CHECK(std::abs(doc["results"]["fit"]["slope"].get<double>() - 8.0 / 3) < 0.2);
    const std::string geo = run_to_string(make("scan", {{"R", "16..64:3 geometric"}, {"delta", "fixed:1/2"}}), 1);
    CHECK(std::count(geo.begin(), geo.end(), '\n') == 4);
    CHECK(geo.find(",32,") != std::string::npos);
}

TEST_CASE("decay csv columns") {
    const std::string out =
        run_to_string(make("decay", {{"alpha", "4"}, {"direction", "0,0,1"}, {"xi", "8..64"}, {"mode", "point"}}), 1);
    CHECK(out.substr(0, out.find('\n')) == "alpha,dir_x,dir_y,dir_z,xi_mag,re,im,abs,est_error");
    CHECK(std::count(out.begin(), out.end(), '\n') == 5);
}

TEST_CASE("config errors exit with 1") {
    std::ostringstream err;
    CHECK(run(make("count", {{"R", "1"}, {"delta", "sometimes:3"}}), err) == kExitConfig);
    CHECK(run(make("count", {{"R", "0"}}), err) == kExitConfig);
    CHECK(run(make("count", {}), err) == kExitConfig);
    CHECK(run(make("nonsense", {}), err) == kExitConfig);
    CHECK(run(make("count", {{"R", "5000"}, {"method", "brute"}}), err) == kExitConfig);
    CHECK(run(make("decay", {{"direction", "0,0"}}), err) == kExitConfig);
    CHECK(run(make("energy", {{"tau", "0.5"}}), err) == kExitConfig);
    ExperimentConfig bad = make("volume", {});
    bad.output_path = "/nonexistent_dir/x.csv";
    CHECK(run(bad, err) == kExitConfig);
    CHECK(err.str().find("error") != std::string::npos);
}

TEST_CASE("command line parsing") {
    const std::string out = tmp_path("argv.csv");
    const char* argv[] = {"heislab", "count", "--alpha", "2", "--R", "1", "--delta", "0", "--out", out.c_str()};
    CHECK(run_main(10, argv) == kExitOk);
    CHECK(slurp(out).find(",6,") != std::string::npos);
    const char* bad[] = {"heislab", "count", "--bogus", "1"};
    CHECK(run_main(4, bad) == kExitConfig);
    const char* none[] = {"heislab"};
    CHECK(run_main(1, none) == kExitConfig);
    const char* help[] = {"heislab", "--help"};
    CHECK(run_main(2, help) == kExitOk);
}

TEST_CASE("verification passes") {
    std::ostringstream err;
    CHECK(run(make("count", {{"alpha", "3"}, {"R", "6"}, {"delta", "0.5"}, {"verify", "true"}}), err) == kExitOk);
    CHECK(run(make("energy", {{"alpha", "4"}, {"q", "4,8"}, {"verify", "true"}}, Format::Json), err) == kExitOk);
}

TEST_CASE("identical output across runs and thread counts") {
    const std::vector<ExperimentConfig> configs = {
        make("count", {{"alpha", "3"}, {"d", "2"}, {"R", "7"}, {"delta", "1/4"}}),
        make("scan", {{"alpha", "2"}, {"R", "8..64"}}, Format::Json),
        make("intersect", {{"alpha", "2"}, {"R", "5"}, {"delta", "0.5"}, {"center", "1,0,0"}}),
        make("decay", {{"alpha", "4"}, {"direction", "1,0,1"}, {"xi", "8..64"}}),
        make("energy", {{"alpha", "4"}, {"q", "16,81"}, {"verify", "true"}}, Format::Json),
        make("curvature", {{"alpha", "6"}, {"d", "2"}}),
        make("volume", {{"alpha", "5"}, {"d", "3"}}, Format::Json),
    };
    for (const auto& c : configs) {
        CAPTURE(c.command);
        const std::string a = run_to_string(c, 1), b = run_to_string(c, 1);
        const std::string p = run_to_string(c, 8), q = run_to_string(c, 8);
        CHECK(a == b);
        CHECK(p == q);
        CHECK(a == p);
    }
}

}
