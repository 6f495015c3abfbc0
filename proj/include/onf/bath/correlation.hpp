#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "onf/bath/spectral.hpp"

namespace onf::bath {

enum class CorrelationKind { OnePoint, TwoPoint };

// F(t) = int_0^inf dw exp(-i (w - w0) t) S(w) sampled on t_m = (m - zero_index) dt.
// Times are in seconds.
struct CorrelationFunction {
    CorrelationKind kind = CorrelationKind::OnePoint;
    double dt = 0.0;
    std::vector<std::complex<double>> samples; // ascending time
    std::size_t zero_index = 0;
    double d_omega = 0.0;
    std::size_t n_fft = 0;
    double omega0 = 0.0;
    double separation = 0.0;
    double cutoff_omega = 0.0;
    double coupling_scale = 0.0;

    double time(std::size_t m) const
    {
        return (static_cast<double>(m) - static_cast<double>(zero_index)) * dt;
    }
    // Samples at t >= 0, F(0), F(dt), ...
    std::span<const std::complex<double>> nonnegative() const
    {
        return std::span<const std::complex<double>>(samples).subspan(zero_index);
    }
};

// Trapezoid-weighted integrand w_k S_k placed on k = 0 .. size()-1.
std::vector<double> weighted_integrand(const SpectralGrid& grid, CorrelationKind kind);

// Largest d_omega for which the cos(beta d) factor is sampled at pi/8 per step.
double required_d_omega(const SpectralGrid& grid);

// Discrete transform of the zero-padded integrand with n_fft points
// (power of two, at least grid.size()). dt = 2 pi / (n_fft d_omega).
// Refuses grids that undersample cos(beta d).
CorrelationFunction correlation_function(const SpectralGrid& grid, CorrelationKind kind, double omega0,
                                         std::size_t n_fft);

struct PeakDiagnostics {
    double peak_time = 0.0;  // s, argmax of |F|
    double peak_abs = 0.0;
    double fwhm = 0.0;       // s, around the global maximum
    bool has_pair = false;   // strongest peaks on each side of t = 0
    double t_minus = 0.0;
    double t_plus = 0.0;
    double separation = 0.0; // t_plus - t_minus
};

PeakDiagnostics peak_diagnostics(const CorrelationFunction& f);

// Full width at half maximum of |F| around sample index `peak`, linear interpolation
// at the crossings.
double full_width_half_max(const CorrelationFunction& f, std::size_t peak);

// CSV t_fs,re_F,im_F over the full window.
std::string correlation_csv(const CorrelationFunction& f, std::string_view provenance);

} // namespace onf::bath
