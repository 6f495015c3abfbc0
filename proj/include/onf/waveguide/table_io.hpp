#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "onf/waveguide/dispersion.hpp"

namespace onf::waveguide {

inline constexpr const char* dispersion_csv_header = "omega_rad_s,beta_rad_m,beta_prime_s_m,v_g_m_s,v_p_m_s";

std::string dispersion_csv(const DispersionTable& table, std::string_view provenance);

// On-disk cache of dispersion tables keyed by (model fingerprint, a, grid).
// Each entry is <key>.csv plus a <key>.json sidecar holding provenance and a
// checksum of the CSV bytes. Entries failing the checksum are rebuilt.
class DispersionCache {
public:
    enum class Outcome { Hit, Miss, Rebuilt };

    explicit DispersionCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    static std::string key(const DielectricModel& model, double a, const FrequencyGrid& grid);

    std::optional<DispersionTable> load(const DielectricModel& model, double a, const FrequencyGrid& grid) const;
    void store(const DispersionTable& table, const FrequencyGrid& requested) const;
    DispersionTable get_or_build(const DielectricModel& model, double a, const FrequencyGrid& grid,
                                 Outcome* outcome = nullptr) const;

    std::filesystem::path csv_path(const std::string& key) const { return dir_ / (key + ".csv"); }
    std::filesystem::path sidecar_path(const std::string& key) const { return dir_ / (key + ".json"); }

private:
    std::filesystem::path dir_;
};

} // namespace onf::waveguide
