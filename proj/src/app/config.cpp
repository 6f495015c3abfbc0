#include "onf/app/config.hpp"

#include <bit>
#include <set>

#include "onf/error.hpp"
#include "onf/io/csv.hpp"
#include "onf/io/hash.hpp"

namespace onf::app {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> keys)
{
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!known.count(k))
            throw ConfigError(where + ": unknown key '" + k + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where)
{
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

} // namespace

nlohmann::json to_json(const RunConfig& c)
{
    return {{"models", c.models},
            {"n1", c.n1},
            {"omega_R", c.omega_R},
            {"gamma_R", c.gamma_R},
            {"a_nm", c.a_nm},
            {"R_nm", c.R_nm},
            {"lambda0_nm", c.lambda0_nm},
            {"omega0_policy", c.omega0_policy},
            {"separations", c.separations},
            {"separation_unit", c.separation_unit},
            {"initial_states", c.initial_states},
            {"gamma_target", c.gamma_target},
            {"grid", {{"omega_max_multiplier", c.grid.omega_max_multiplier}, {"n_fft", c.grid.n_fft}}},
            {"solver",
             {{"h_fs", c.solver.h_fs},
              {"T_fs", c.solver.T_fs},
              {"max_halvings", c.solver.max_halvings},
              {"tolerance", c.solver.tolerance}}},
            {"thresholds",
             {{"establish_const", c.thresholds.establish_const},
              {"establish_dl", c.thresholds.establish_dl},
              {"fit_start_fs", c.thresholds.fit_start_fs}}},
            {"cutoff", {{"zero_index", c.cutoff.zero_index}, {"tolerance", c.cutoff.tolerance}}},
            {"output_dir", c.output_dir},
            {"cache_dir", c.cache_dir}};
}

RunConfig parse_config(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    reject_unknown(j, "config",
                   {"models", "n1", "omega_R", "gamma_R", "a_nm", "R_nm", "lambda0_nm", "omega0_policy",
                    "separations", "separation_unit", "initial_states", "gamma_target", "grid", "solver",
                    "thresholds", "cutoff", "output_dir", "cache_dir"});
    RunConfig c;
    const std::string w = "config";
    read(j, "models", c.models, w);
    read(j, "n1", c.n1, w);
    read(j, "omega_R", c.omega_R, w);
    read(j, "gamma_R", c.gamma_R, w);
    read(j, "a_nm", c.a_nm, w);
    read(j, "R_nm", c.R_nm, w);
    read(j, "lambda0_nm", c.lambda0_nm, w);
    read(j, "omega0_policy", c.omega0_policy, w);
    read(j, "separations", c.separations, w);
    read(j, "separation_unit", c.separation_unit, w);
    read(j, "initial_states", c.initial_states, w);
    read(j, "gamma_target", c.gamma_target, w);
    read(j, "output_dir", c.output_dir, w);
    read(j, "cache_dir", c.cache_dir, w);
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        reject_unknown(g, "config.grid", {"omega_max_multiplier", "n_fft"});
        read(g, "omega_max_multiplier", c.grid.omega_max_multiplier, "config.grid");
        read(g, "n_fft", c.grid.n_fft, "config.grid");
    }
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        reject_unknown(s, "config.solver", {"h_fs", "T_fs", "max_halvings", "tolerance"});
        read(s, "h_fs", c.solver.h_fs, "config.solver");
        read(s, "T_fs", c.solver.T_fs, "config.solver");
        read(s, "max_halvings", c.solver.max_halvings, "config.solver");
        read(s, "tolerance", c.solver.tolerance, "config.solver");
    }
    if (j.contains("thresholds")) {
        const auto& t = j["thresholds"];
        reject_unknown(t, "config.thresholds", {"establish_const", "establish_dl", "fit_start_fs"});
        read(t, "establish_const", c.thresholds.establish_const, "config.thresholds");
        read(t, "establish_dl", c.thresholds.establish_dl, "config.thresholds");
        read(t, "fit_start_fs", c.thresholds.fit_start_fs, "config.thresholds");
    }
    if (j.contains("cutoff")) {
        const auto& t = j["cutoff"];
        reject_unknown(t, "config.cutoff", {"zero_index", "tolerance"});
        read(t, "zero_index", c.cutoff.zero_index, "config.cutoff");
        read(t, "tolerance", c.cutoff.tolerance, "config.cutoff");
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::string text;
    try {
        text = io::read_file(path);
    } catch (const std::exception& e) {
        throw ConfigError("config: cannot read " + path.string() + ": " + e.what());
    }
    return parse_config(text);
}

void validate(const RunConfig& c)
{
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (c.models.empty())
        fail("models must not be empty");
    for (const auto& m : c.models)
        if (m != "constant" && m != "drude_lorentz")
            fail("unknown model '" + m + "' (constant, drude_lorentz)");
    if (!(c.n1 > 1.0))
        fail("n1 must exceed 1");
    if (c.omega_R < 0.0)
        fail("omega_R must be positive (0 selects the default)");
    if (c.a_nm.empty())
        fail("a_nm must not be empty");
    for (double a : c.a_nm)
        if (!(a >= 150.0))
            fail("a_nm values must be >= 150");
    if (!(c.R_nm >= 0.0))
        fail("R_nm must be >= 0");
    if (!(c.lambda0_nm > 0.0))
        fail("lambda0_nm must be positive");
    if (c.omega0_policy != "vacuum_lambda" && c.omega0_policy != "beta0_sets_lambda")
        fail("omega0_policy must be vacuum_lambda or beta0_sets_lambda");
    if (c.separations.empty())
        fail("separations must not be empty");
    for (double d : c.separations)
        if (!(d >= 0.0))
            fail("separations must be >= 0");
    if (c.separation_unit != "pi_over_beta0" && c.separation_unit != "nm")
        fail("separation_unit must be pi_over_beta0 or nm");
    if (c.initial_states.empty())
        fail("initial_states must not be empty");
    for (const auto& s : c.initial_states)
        if (s != "single" && s != "symmetric" && s != "antisymmetric")
            fail("unknown initial state '" + s + "'");
    if (!(c.gamma_target > 0.0))
        fail("gamma_target must be positive");
    if (!(c.grid.omega_max_multiplier > 1.0))
        fail("grid.omega_max_multiplier must exceed 1");
    if (!std::has_single_bit(c.grid.n_fft) || c.grid.n_fft < 1024)
        fail("grid.n_fft must be a power of two >= 1024");
    if (!(c.solver.h_fs > 0.0) || !(c.solver.T_fs > 0.0))
        fail("solver.h_fs and solver.T_fs must be positive");
    if (c.solver.T_fs / c.solver.h_fs + 2.0 > static_cast<double>(c.grid.n_fft / 2))
        fail("solver.T_fs / solver.h_fs exceeds half the transform window (grid.n_fft / 2)");
    if (c.solver.max_halvings < 0 || c.solver.max_halvings > 8)
        fail("solver.max_halvings must lie in [0, 8]");
    auto unit = [&](double x, const char* name) {
        if (!(x > 0.0 && x < 1.0))
            fail(std::string(name) + " must lie in (0, 1)");
    };
    unit(c.solver.tolerance, "solver.tolerance");
    unit(c.thresholds.establish_const, "thresholds.establish_const");
    unit(c.thresholds.establish_dl, "thresholds.establish_dl");
    unit(c.cutoff.tolerance, "cutoff.tolerance");
    if (!(c.thresholds.fit_start_fs >= 0.0 && c.thresholds.fit_start_fs < c.solver.T_fs))
        fail("thresholds.fit_start_fs must lie in [0, solver.T_fs)");
    if (c.cutoff.zero_index < 0)
        fail("cutoff.zero_index must be >= 0");
}

std::string canonical_text(const RunConfig& c) { return to_json(c).dump(); }

std::string config_hash(const RunConfig& c)
{
    auto j = to_json(c);
    j.erase("output_dir");
    j.erase("cache_dir");
    return io::to_hex(io::fnv1a(j.dump()));
}

} // namespace onf::app
