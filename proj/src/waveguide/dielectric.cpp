#include "onf/waveguide/dielectric.hpp"

#include <cmath>
#include <limits>

#include "onf/constants.hpp"
#include "onf/error.hpp"
#include "onf/io/hash.hpp"

namespace onf::waveguide {

DielectricModel DielectricModel::constant(double n1)
{
    if (!(n1 > 1.0))
        throw ConfigError("constant dielectric: refractive index must exceed 1 (got " + std::to_string(n1) + ")");
    DielectricModel m;
    m.kind_ = DielectricKind::Constant;
    m.n1_ = n1;
    return m;
}

DielectricModel DielectricModel::drude_lorentz(double omega_R, double gamma_R, double omega_p)
{
    if (!(omega_R > 0.0) || !(gamma_R >= 0.0) || !(omega_p > 0.0))
        throw ConfigError("Drude-Lorentz: need omega_R > 0, gamma_R >= 0, omega_p > 0");
    DielectricModel m;
    m.kind_ = DielectricKind::DrudeLorentz;
    m.omega_R_ = omega_R;
    m.gamma_R_ = gamma_R;
    m.omega_p_ = omega_p;
    return m;
}

DielectricModel DielectricModel::calibrated(double omega0, double n1, double omega_R, double gamma_R)
{
    auto m = drude_lorentz(omega_R, gamma_R, calibrate_plasma_frequency(omega_R, gamma_R, omega0, n1));
    m.n1_ = n1;
    return m;
}

DielectricModel DielectricModel::calibrated(double omega0, double n1)
{
    return calibrated(omega0, n1, omega_350, dipole_damping_rate(omega_350));
}

double DielectricModel::permittivity(double omega) const
{
    if (kind_ == DielectricKind::Constant)
        return n1_ * n1_;
    const double detuning = omega_R_ * omega_R_ - omega * omega;
    const double damping = gamma_R_ * omega;
    return 1.0 + omega_p_ * omega_p_ * detuning / (detuning * detuning + damping * damping);
}

double DielectricModel::refractive_index(double omega) const
{
    const double eps = permittivity(omega);
    return eps > 0.0 ? std::sqrt(eps) : std::numeric_limits<double>::quiet_NaN();
}

bool DielectricModel::guides(double omega) const
{
    return permittivity(omega) > 1.0;
}

std::string DielectricModel::name() const
{
    return kind_ == DielectricKind::Constant ? "constant" : "drude_lorentz";
}

std::uint64_t DielectricModel::fingerprint() const
{
    io::Fnv1a hash;
    hash.add(static_cast<int>(kind_));
    hash.add(n1_);
    hash.add(omega_R_);
    hash.add(gamma_R_);
    hash.add(omega_p_);
    return hash.value();
}

double permittivity(const DielectricModel& model, double omega)
{
    return model.permittivity(omega);
}

double calibrate_plasma_frequency(double omega_R, double gamma_R, double omega0, double n1)
{
    if (!(omega0 < omega_R))
        throw NumericalError("plasma-frequency calibration: omega0 must lie below omega_R "
                             "(the index drops below 1 beyond the resonance)");
    if (!(n1 > 1.0))
        throw ConfigError("plasma-frequency calibration: target index must exceed 1");
    // Re eps = 1 + omega_p^2 * g(omega0) is linear in omega_p^2.
    const double detuning = omega_R * omega_R - omega0 * omega0;
    const double damping = gamma_R * omega0;
    const double g = detuning / (detuning * detuning + damping * damping);
    return std::sqrt((n1 * n1 - 1.0) / g);
}

double dipole_damping_rate(double omega_R)
{
    return 4.0 * fine_structure * bohr_radius * bohr_radius * omega_R * omega_R * omega_R
           / (3.0 * speed_of_light * speed_of_light);
}

} // namespace onf::waveguide
