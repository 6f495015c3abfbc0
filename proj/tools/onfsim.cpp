#include <iostream>

#include <CLI11.hpp>

#include "onf/app/commands.hpp"
#include "onf/error.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Optical nanofiber environment and two-atom non-Markovian dynamics"};
    app.require_subcommand(1);
    onf::app::CommandOptions opt;
    bool seedless = false;

    const char* commands[][2] = {
        {"dispersion", "dispersion relation and velocities"},
        {"spectrum", "one- and two-point spectral densities"},
        {"correlations", "correlation functions F_mm(t), F_mn(t)"},
        {"evolve", "atomic dynamics and analysis report"},
        {"sweep", "radius x separation x model sweep"},
        {"analyze", "re-analyse evolution files in the output directory"},
    };
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c[0], c[1]);
        sub->add_option("--config", opt.config_path, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--cache", opt.cache_dir, "dispersion cache directory");
        sub->add_option("--jobs", opt.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
        sub->add_flag("--seedless", seedless, "reserved");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : onf::app::exit_config;
    }
    if (seedless) {
        std::cerr << "error: --seedless is reserved; no computation uses random numbers\n";
        return onf::app::exit_config;
    }

    try {
        return onf::app::run_command(app.get_subcommands().front()->get_name(), opt, std::cout);
    } catch (const onf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return onf::app::exit_config;
    } catch (const onf::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return onf::app::exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return onf::app::exit_numerical;
    }
}
