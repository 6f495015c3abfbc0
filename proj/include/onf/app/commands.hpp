#pragma once

#include <ostream>
#include <string>

namespace onf::app {

struct CommandOptions {
    std::string config_path; // empty: built-in defaults
    std::string out_dir;     // overrides output_dir
    std::string cache_dir;   // overrides cache_dir
    int jobs = 1;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numerical = 3;
inline constexpr int exit_partial = 4;

// Runs one subcommand (dispersion, spectrum, correlations, evolve, sweep,
// analyze) and returns its exit code. Errors propagate as onf::Error.
int run_command(const std::string& name, const CommandOptions& options, std::ostream& log);

} // namespace onf::app
