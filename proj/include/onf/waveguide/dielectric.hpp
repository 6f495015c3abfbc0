#pragma once

#include <cstdint>
#include <string>

namespace onf::waveguide {

enum class DielectricKind { Constant, DrudeLorentz };

// Relative permittivity of the fiber core. Only the real part is kept; the
// imaginary part of the Drude-Lorentz function (absorption) is discarded.
class DielectricModel {
public:
    static DielectricModel constant(double n1);
    static DielectricModel drude_lorentz(double omega_R, double gamma_R, double omega_p);

    // Drude-Lorentz model whose plasma frequency reproduces index n1 at omega0.
    static DielectricModel calibrated(double omega0, double n1, double omega_R, double gamma_R);
    static DielectricModel calibrated(double omega0, double n1);

    DielectricKind kind() const { return kind_; }
    double n1() const { return n1_; }
    double omega_R() const { return omega_R_; }
    double gamma_R() const { return gamma_R_; }
    double omega_p() const { return omega_p_; }

    double permittivity(double omega) const;
    // NaN when the permittivity is not positive.
    double refractive_index(double omega) const;
    // True when n(omega) > 1, i.e. a vacuum-clad fiber can guide light.
    bool guides(double omega) const;

    std::string name() const;
    // Stable 64-bit fingerprint of the parameters, used as cache key.
    std::uint64_t fingerprint() const;

    friend bool operator==(const DielectricModel&, const DielectricModel&) = default;

private:
    DielectricKind kind_ = DielectricKind::Constant;
    double n1_ = 0.0;
    double omega_R_ = 0.0;
    double gamma_R_ = 0.0;
    double omega_p_ = 0.0;
};

double permittivity(const DielectricModel& model, double omega);

// Plasma frequency such that Re eps_L(omega0) = n1^2.
double calibrate_plasma_frequency(double omega_R, double gamma_R, double omega0, double n1);

// Electric-dipole radiative damping of a constituent with resonance omega_R:
// 4 alpha a0^2 omega_R^3 / (3 c^2).
double dipole_damping_rate(double omega_R);

} // namespace onf::waveguide
