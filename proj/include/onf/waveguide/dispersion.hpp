#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "onf/waveguide/dielectric.hpp"

namespace onf::waveguide {

// HE11 root at one frequency: propagation constant and the transverse
// wavenumbers inside (h) and outside (q) the core.
struct ModeRoot {
    double omega = 0.0;
    double beta = 0.0;
    double h = 0.0;
    double q = 0.0;
    double n1 = 0.0; // core index at omega
};

// Left minus right side of the HE11 eigenvalue equation (vacuum cladding).
// Requires omega/c < beta < n1(omega) omega/c; tends to -inf as beta -> k2
// and to +inf as beta -> k1.
double dispersion_residual(const DielectricModel& model, double a, double omega, double beta);

namespace detail {
// Same residual parameterized by x = q a, with ka = omega a / c and core index n.
// Free of the cancellation between the K1'/K1 terms for small x.
double residual_qa(double x, double ka, double n);
} // namespace detail

// Fundamental-mode root by bisection (relative 1e-12) plus one Newton step.
// Throws NumericalError when omega is outside the guiding range.
ModeRoot solve_beta(const DielectricModel& model, double a, double omega);

// Uniform grid omega_i = (first + i) * d_omega, i < count.
struct FrequencyGrid {
    double d_omega = 0.0;
    std::size_t first = 0;
    std::size_t count = 0;

    double omega(std::size_t i) const { return static_cast<double>(first + i) * d_omega; }
    double back() const { return omega(count - 1); }
};

struct DispersionTable {
    DielectricModel model;
    double a = 0.0;
    FrequencyGrid grid; // grid actually covered by the rows below
    std::vector<double> omega;
    std::vector<double> beta;
    std::vector<double> beta_prime;
    std::vector<double> v_g;
    std::vector<double> v_p;
    std::vector<std::string> warnings; // truncation notes

    std::size_t size() const { return omega.size(); }
    bool empty() const { return omega.empty(); }
    // Row index of a grid frequency index (first + i), or npos.
    std::size_t row_of(std::size_t grid_index) const;
    // Local cubic interpolation of a column at omega.
    double interpolate(const std::vector<double>& column, double omega) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Solves every grid point. Points below the resolvable range (beta rounding to
// omega/c) are dropped from the low end; points without a guided mode end the
// table. Both cases are recorded in `warnings`.
DispersionTable build_dispersion_table(const DielectricModel& model, double a, const FrequencyGrid& grid);

// Recomputes beta' on a grid with half the spacing and returns the largest
// relative change of beta' at the original nodes within [omega_lo, omega_hi].
double beta_prime_refinement_change(const DispersionTable& table, double omega_lo, double omega_hi);

// Largest grid index with omega below omega_limit.
std::size_t last_index_below(double d_omega, double omega_limit);

} // namespace onf::waveguide
