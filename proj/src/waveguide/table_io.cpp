#include "onf/waveguide/table_io.hpp"

#include <json.hpp>

#include "onf/error.hpp"
#include "onf/io/csv.hpp"
#include "onf/io/hash.hpp"

namespace onf::waveguide {

using nlohmann::json;

std::string dispersion_csv(const DispersionTable& t, std::string_view provenance)
{
    return io::csv_document(provenance, {"omega_rad_s", "beta_rad_m", "beta_prime_s_m", "v_g_m_s", "v_p_m_s"},
                            {&t.omega, &t.beta, &t.beta_prime, &t.v_g, &t.v_p});
}

std::string DispersionCache::key(const DielectricModel& model, double a, const FrequencyGrid& grid)
{
    io::Fnv1a h;
    h.add(model.fingerprint());
    h.add(a);
    h.add(grid.d_omega);
    h.add(static_cast<std::uint64_t>(grid.first));
    h.add(static_cast<std::uint64_t>(grid.count));
    return "dispersion_" + model.name() + "_" + io::to_hex(h.value());
}

namespace {

json model_json(const DielectricModel& m)
{
    return {{"kind", m.name()},
            {"n1", m.n1()},
            {"omega_R", m.omega_R()},
            {"gamma_R", m.gamma_R()},
            {"omega_p", m.omega_p()},
            {"fingerprint", io::to_hex(m.fingerprint())}};
}

} // namespace

std::optional<DispersionTable> DispersionCache::load(const DielectricModel& model, double a,
                                                     const FrequencyGrid& grid) const
{
    const std::string k = key(model, a, grid);
    if (!std::filesystem::exists(csv_path(k)) || !std::filesystem::exists(sidecar_path(k)))
        return std::nullopt;
    try {
        const std::string csv = io::read_file(csv_path(k));
        const json side = json::parse(io::read_file(sidecar_path(k)));
        if (side.at("checksum").get<std::string>() != io::to_hex(io::fnv1a(csv)))
            return std::nullopt;
        if (side.at("model").at("fingerprint").get<std::string>() != io::to_hex(model.fingerprint()))
            return std::nullopt;

        const io::CsvTable parsed = io::parse_csv(csv);
        DispersionTable t;
        t.model = model;
        t.a = a;
        t.grid = {grid.d_omega, side.at("rows").at("first").get<std::size_t>(),
                  side.at("rows").at("count").get<std::size_t>()};
        t.omega = parsed.column("omega_rad_s");
        t.beta = parsed.column("beta_rad_m");
        t.beta_prime = parsed.column("beta_prime_s_m");
        t.v_g = parsed.column("v_g_m_s");
        t.v_p = parsed.column("v_p_m_s");
        t.warnings = side.at("warnings").get<std::vector<std::string>>();
        if (t.size() != t.grid.count)
            return std::nullopt;
        return t;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void DispersionCache::store(const DispersionTable& t, const FrequencyGrid& requested) const
{
    const std::string k = key(t.model, t.a, requested);
    const std::string csv = dispersion_csv(t, "dispersion-cache key=" + k);
    json side = {{"key", k},
                 {"model", model_json(t.model)},
                 {"a_m", t.a},
                 {"grid", {{"d_omega", requested.d_omega}, {"first", requested.first}, {"count", requested.count}}},
                 {"rows", {{"first", t.grid.first}, {"count", t.grid.count}}},
                 {"warnings", t.warnings},
                 {"checksum", io::to_hex(io::fnv1a(csv))}};
    // CSV first: a sidecar never points at a missing or partial table.
    io::write_file_atomic(csv_path(k), csv);
    io::write_file_atomic(sidecar_path(k), side.dump(2) + "\n");
}

DispersionTable DispersionCache::get_or_build(const DielectricModel& model, double a, const FrequencyGrid& grid,
                                              Outcome* outcome) const
{
    if (auto cached = load(model, a, grid)) {
        if (outcome)
            *outcome = Outcome::Hit;
        return std::move(*cached);
    }
    const std::string k = key(model, a, grid);
    const bool existed = std::filesystem::exists(csv_path(k)) || std::filesystem::exists(sidecar_path(k));
    DispersionTable t = build_dispersion_table(model, a, grid);
    store(t, grid);
    if (outcome)
        *outcome = existed ? Outcome::Rebuilt : Outcome::Miss;
    return t;
}

} // namespace onf::waveguide
