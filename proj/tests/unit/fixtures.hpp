#pragma once

#include "onf/bath/correlation.hpp"
#include "onf/bath/spectral.hpp"
#include "onf/constants.hpp"
#include "onf/waveguide/mode_profile.hpp"

namespace fixture {

inline const double omega0 = onf::omega_from_wavelength(780.0 * onf::nm);
inline const double a200 = 200.0 * onf::nm;
inline const double R100 = 100.0 * onf::nm;
inline const double gamma_target = 0.5e12;

struct Fiber {
    onf::waveguide::DispersionTable table;
    onf::waveguide::ModeTable modes;
};

// Working grid d_omega = 2 pi / (n h) with h = 0.05 fs, table top at `top`.
inline Fiber make_fiber(const onf::waveguide::DielectricModel& m, double top, std::size_t n = 65536,
                        double a = a200)
{
    const double dw = 2.0 * onf::pi / (static_cast<double>(n) * 0.05 * onf::fs);
    const onf::waveguide::FrequencyGrid g{dw, 1, onf::waveguide::last_index_below(dw, top)};
    Fiber f;
    f.table = onf::waveguide::build_dispersion_table(m, a, g);
    f.modes = onf::waveguide::build_mode_table(f.table);
    return f;
}

inline const Fiber& constant_fiber()
{
    static const Fiber f = make_fiber(onf::waveguide::DielectricModel::constant(onf::silica_index), 10.0 * omega0);
    return f;
}

inline const Fiber& dl_fiber()
{
    static const Fiber f
        = make_fiber(onf::waveguide::DielectricModel::calibrated(omega0, onf::silica_index), onf::omega_350);
    return f;
}

inline onf::bath::SpectralGrid spectrum(const Fiber& f, double d, double cutoff = 0.0)
{
    auto g = onf::bath::one_point_spectral_density(f.table, f.modes, R100, gamma_target, omega0, cutoff);
    onf::bath::two_point_integrand(g, f.table, d);
    return g;
}

} // namespace fixture
