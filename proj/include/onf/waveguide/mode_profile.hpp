#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "onf/waveguide/dispersion.hpp"

namespace onf::waveguide {

// HE11 shape parameter s. Depends only on h a and q a.
double mode_s_parameter(double beta, double h, double q, double a);

struct FieldComponents {
    std::complex<double> e_r;
    std::complex<double> e_phi;
    std::complex<double> e_z;

    double norm_squared() const { return std::norm(e_r) + std::norm(e_phi) + std::norm(e_z); }
};

// Normalized HE11 mode function at one frequency (quasi-circular basis, l = f = +1).
// The amplitude A makes  int dphi int dr r n(r)^2 |e|^2 = 1.
class ModeProfile {
public:
    ModeProfile() = default;
    ModeProfile(const ModeRoot& root, double a);

    double omega() const { return root_.omega; }
    double s() const { return s_; }
    double amplitude() const { return amplitude_; }
    double radius() const { return a_; }
    const ModeRoot& root() const { return root_; }

    // Valid for any r >= 0; the inside branch exists for the normalization check.
    FieldComponents field(double r) const;
    // Radial component outside the fiber; r <= a is a DomainError.
    std::complex<double> e_r(double r) const;

    // 2 pi int_0^inf n^2 |e|^2 r dr evaluated with closed-form Bessel integrals.
    double normalization_integral() const;

private:
    double unnormalized_integral() const;

    ModeRoot root_;
    double a_ = 0.0;
    double s_ = 0.0;
    double amplitude_ = 1.0;
};

// Mode profiles for every row of a dispersion table.
struct ModeTable {
    std::uint64_t model_fingerprint = 0;
    double a = 0.0;
    FrequencyGrid grid;
    std::vector<ModeProfile> profiles;
};

ModeTable build_mode_table(const DispersionTable& table);

// |e_r| source for spectral densities: uses the tabulated profile when omega
// is a grid node and solves the mode afresh otherwise.
std::complex<double> mode_e_r(double omega, double r, const DispersionTable& table, const ModeTable& modes);

} // namespace onf::waveguide
