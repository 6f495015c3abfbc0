#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace onf::app {

struct GridConfig {
    double omega_max_multiplier = 40.0; // constant model: table top in units of omega0
    std::size_t n_fft = 65536;          // transform size at the coarsest step

    friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct SolverConfig {
    double h_fs = 0.05;
    double T_fs = 1000.0;
    int max_halvings = 4;
    double tolerance = 1e-4;

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct Thresholds {
    double establish_const = 0.99;
    double establish_dl = 0.01;
    double fit_start_fs = 300.0;

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct CutoffConfig {
    int zero_index = 2;
    double tolerance = 1e-3;

    friend bool operator==(const CutoffConfig&, const CutoffConfig&) = default;
};

struct RunConfig {
    std::vector<std::string> models = {"constant"}; // constant, drude_lorentz
    double n1 = 1.4534;
    double omega_R = 0.0; // rad/s; 0 selects 2 pi c / 350 nm
    double gamma_R = -1.0; // rad/s; negative selects the dipole damping of omega_R
    std::vector<double> a_nm = {200.0};
    double R_nm = 100.0;
    double lambda0_nm = 780.0;
    std::string omega0_policy = "vacuum_lambda"; // or beta0_sets_lambda
    std::vector<double> separations = {2.0};
    std::string separation_unit = "pi_over_beta0"; // or nm
    std::vector<std::string> initial_states = {"single", "symmetric", "antisymmetric"};
    double gamma_target = 0.5e12; // 1/s
    GridConfig grid;
    SolverConfig solver;
    Thresholds thresholds;
    CutoffConfig cutoff;
    std::string output_dir = "results";
    std::string cache_dir = "";

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Parses and validates; missing keys take the defaults above, unknown keys
// are rejected. Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& c);
// Compact canonical serialization of the effective config.
std::string canonical_text(const RunConfig& c);
// Hash of the canonical text without the output and cache paths.
std::string config_hash(const RunConfig& c);

void validate(const RunConfig& c);

} // namespace onf::app
