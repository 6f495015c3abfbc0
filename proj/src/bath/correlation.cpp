#include "onf/bath/correlation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "onf/constants.hpp"
#include "onf/error.hpp"
#include "onf/io/csv.hpp"
#include "onf/numeric/fft.hpp"

namespace onf::bath {

std::vector<double> weighted_integrand(const SpectralGrid& grid, CorrelationKind kind)
{
    const auto& s = kind == CorrelationKind::OnePoint ? grid.s_one : grid.s_two;
    if (s.size() != grid.size())
        throw ConfigError("correlation: two-point integrand has not been filled");
    std::vector<double> w(s.begin(), s.end());
    std::size_t lo = 0;
    while (lo < w.size() && grid.s_one[lo] == 0.0)
        ++lo;
    if (lo == w.size())
        throw NumericalError("correlation: spectral density is identically zero");
    const std::size_t hi = w.size() - 1;
    w[lo] *= 0.5;
    if (hi != lo)
        w[hi] *= 0.5;
    return w;
}

double required_d_omega(const SpectralGrid& grid)
{
    if (grid.separation <= 0.0 || grid.max_beta_prime <= 0.0)
        return grid.d_omega;
    return pi / (8.0 * grid.max_beta_prime * grid.separation);
}

CorrelationFunction correlation_function(const SpectralGrid& grid, CorrelationKind kind, double omega0,
                                         std::size_t n_fft)
{
    if (!std::has_single_bit(n_fft) || n_fft < 4)
        throw ConfigError("correlation: transform size must be a power of two");
    if (n_fft < grid.size())
        throw ConfigError("correlation: transform size " + std::to_string(n_fft) + " is below the "
                          + std::to_string(grid.size()) + " spectral samples");
    if (kind == CorrelationKind::TwoPoint && grid.d_omega > required_d_omega(grid)) {
        std::ostringstream msg;
        msg << "correlation: d_omega = " << grid.d_omega << " rad/s undersamples cos(beta d); need d_omega <= "
            << required_d_omega(grid) << " rad/s";
        throw NumericalError(msg.str());
    }

    const auto w = weighted_integrand(grid, kind);
    std::vector<std::complex<double>> spectrum(n_fft);
    std::copy(w.begin(), w.end(), spectrum.begin());
    const auto x = numeric::dft_forward(spectrum);

    CorrelationFunction f;
    f.kind = kind;
    f.d_omega = grid.d_omega;
    f.n_fft = n_fft;
    f.dt = 2.0 * pi / (static_cast<double>(n_fft) * grid.d_omega);
    f.zero_index = n_fft / 2;
    f.omega0 = omega0;
    f.separation = kind == CorrelationKind::TwoPoint ? grid.separation : 0.0;
    f.cutoff_omega = grid.cutoff_omega;
    f.coupling_scale = grid.coupling_scale;
    f.samples.resize(n_fft);
    for (std::size_t j = 0; j < n_fft; ++j) {
        // j < N/2 holds t >= 0, the upper half wraps to negative times
        const std::size_t m = j < n_fft / 2 ? j + f.zero_index : j - f.zero_index;
        const double t = f.time(m);
        f.samples[m] = grid.d_omega * x[j] * std::polar(1.0, omega0 * t);
    }
    return f;
}

double full_width_half_max(const CorrelationFunction& f, std::size_t peak)
{
    const auto amp = [&](std::size_t m) { return std::abs(f.samples[m]); };
    const double half = 0.5 * amp(peak);
    std::size_t l = peak;
    while (l > 0 && amp(l) > half)
        --l;
    std::size_t r = peak;
    while (r + 1 < f.samples.size() && amp(r) > half)
        ++r;
    if (amp(l) > half || amp(r) > half)
        throw NumericalError("correlation: half maximum not reached inside the window");
    const double tl = f.time(l) + (half - amp(l)) / (amp(l + 1) - amp(l)) * f.dt;
    const double tr = f.time(r - 1) + (half - amp(r - 1)) / (amp(r) - amp(r - 1)) * f.dt;
    return tr - tl;
}

PeakDiagnostics peak_diagnostics(const CorrelationFunction& f)
{
    PeakDiagnostics p;
    std::size_t best = 0;
    std::size_t best_neg = 0;
    std::size_t best_pos = f.zero_index + 1;
    for (std::size_t m = 0; m < f.samples.size(); ++m) {
        const double v = std::abs(f.samples[m]);
        if (v > std::abs(f.samples[best]))
            best = m;
        if (m < f.zero_index && v > std::abs(f.samples[best_neg]))
            best_neg = m;
        if (m > f.zero_index && v > std::abs(f.samples[best_pos]))
            best_pos = m;
    }
    p.peak_time = f.time(best);
    p.peak_abs = std::abs(f.samples[best]);
    p.fwhm = full_width_half_max(f, best);
    if (f.kind == CorrelationKind::TwoPoint && f.separation > 0.0) {
        p.has_pair = true;
        p.t_minus = f.time(best_neg);
        p.t_plus = f.time(best_pos);
        p.separation = p.t_plus - p.t_minus;
    }
    return p;
}

std::string correlation_csv(const CorrelationFunction& f, std::string_view provenance)
{
    std::vector<double> t(f.samples.size());
    std::vector<double> re(t.size());
    std::vector<double> im(t.size());
    for (std::size_t m = 0; m < t.size(); ++m) {
        t[m] = f.time(m) / fs;
        re[m] = f.samples[m].real();
        im[m] = f.samples[m].imag();
    }
    return io::csv_document(provenance, {"t_fs", "re_F", "im_F"}, {&t, &re, &im});
}

} // namespace onf::bath
