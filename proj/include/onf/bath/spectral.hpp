#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "onf/waveguide/dispersion.hpp"
#include "onf/waveguide/mode_profile.hpp"

namespace onf::bath {

// Guided-mode spectral densities on omega_k = k * d_omega, k = 0 .. size()-1.
// Samples outside the dispersion table (below its first row, above the cutoff)
// are zero.
struct SpectralGrid {
    double d_omega = 0.0;
    std::vector<double> s_one; // S(omega, R), units of 1/s^2 per rad/s
    std::vector<double> s_two; // S(omega, R) cos(beta d); empty until filled
    double coupling_scale = 0.0; // target Markovian amplitude decay rate (1/s)
    double prefactor = 0.0;      // |p|^2 / (pi eps0 hbar) implied by coupling_scale
    double cutoff_omega = 0.0;
    double clearance = 0.0;  // R, m
    double separation = 0.0; // d, m (meaningful once s_two is filled)
    double max_beta_prime = 0.0; // over the populated band, s/m
    std::uint64_t model_fingerprint = 0;
    double a = 0.0;

    std::size_t size() const { return s_one.size(); }
    double omega(std::size_t k) const { return static_cast<double>(k) * d_omega; }
};

// S(omega, R) = prefactor * omega * beta'(omega) * |e_r(omega, a + R)|^2 on the
// table grid up to cutoff_omega (defaults to the table end). The prefactor is
// fixed so that pi S(omega0) = gamma_target.
SpectralGrid one_point_spectral_density(const waveguide::DispersionTable& table, const waveguide::ModeTable& modes,
                                        double R, double gamma_target, double omega0, double cutoff_omega = 0.0);

// Fills s_two = s_one * cos(beta d).
void two_point_integrand(SpectralGrid& grid, const waveguide::DispersionTable& table, double d);

// Amplitude decay rate in the Markov limit, pi S(omega0), by local cubic interpolation.
double markovian_rate(const SpectralGrid& grid, double omega0);

// Frequencies below omega_R where cos(beta d) vanishes, ascending, each
// polished with the exact dispersion solver. Only zeros up to omega_limit.
struct CosineZero {
    double omega;
    long order; // beta d = (order + 1/2) pi
};
std::vector<CosineZero> cosine_zeros(const waveguide::DispersionTable& table, double d, double omega_limit);

// Highest table frequency below which d_omega * beta' * d <= pi/8 holds everywhere.
double resolvable_limit(const waveguide::DispersionTable& table, double d);

struct CutoffPolicy {
    int zero_index = 2;        // counted downward from the highest resolvable zero
    double tolerance = 1e-3;   // relative change allowed against the two higher zeros
};

struct CutoffChoice {
    double omega = 0.0;
    long order = 0;
    std::vector<double> checked_omegas;   // chosen zero, then the two higher ones
    std::vector<double> observables;
    double max_relative_change = 0.0;
};

// Observable recomputed for a trial cutoff frequency.
using CutoffObservable = std::function<double(double cutoff_omega)>;

// Hard cutoff at a zero of cos(beta d) for the Drude-Lorentz model. For the
// constant model the cutoff is simply the table end.
CutoffChoice choose_cutoff(const waveguide::DispersionTable& table, double d, const CutoffPolicy& policy,
                           const CutoffObservable& observable);

} // namespace onf::bath
