#pragma once

#include <numbers>

namespace onf {

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0;       // m/s
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double bohr_radius = 5.29177210903e-11;    // m

inline constexpr double nm = 1e-9;
inline constexpr double fs = 1e-15;

// Angular frequency of a vacuum wavelength.
constexpr double omega_from_wavelength(double lambda) { return 2.0 * pi * speed_of_light / lambda; }

// Silica-like resonance of the fiber constituents (350 nm).
inline constexpr double omega_350 = 2.0 * pi * speed_of_light / (350.0 * nm);

// Refractive index used by the constant dielectric model.
inline constexpr double silica_index = 1.4534;

} // namespace onf
