#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace heis {

enum class Format { Csv, Json };

struct ExperimentConfig {
    std::string command; // count, scan, intersect, decay, energy, curvature, volume
    std::map<std::string, std::string> parameters;
    std::string output_path = "-"; // "-" is stdout
    Format format = Format::Csv;
    int threads = 1;
    std::uint64_t seed = 0;
    bool timings = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitConsistency = 2;

// Writes the experiment output and returns the exit status. Diagnostics go to
// `err`.
int run(const ExperimentConfig& config, std::ostream& err);

// Full command line handling, --help included.
int run_main(int argc, const char* const* argv);

} // namespace heis
