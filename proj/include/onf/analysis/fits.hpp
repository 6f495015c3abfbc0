#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace onf::analysis {

// Least-squares line through (t, ln P) on [t_start, t_end].
struct DecayFit {
    double rate = 0.0;        // -slope, 1/s
    double rate_stderr = 0.0;
    double log_intercept = 0.0;
    double log_intercept_stderr = 0.0;
    double covariance = 0.0;  // cov(log_intercept, rate)
    double rms_residual = 0.0; // in ln P
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t samples = 0;
};

// Throws NumericalError for fewer than 10 samples or non-positive P in the window.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> p, double t_start,
                        double t_end = 0.0);

struct CommunicationTime {
    double t_com = 0.0; // s
    double t_com_stderr = 0.0;
    DecayFit single;
    DecayFit collective;
};

// Intersection of the extrapolated late-time lines of ln P_single and ln P_coll.
// Empty when the two slopes agree within three standard errors.
std::optional<CommunicationTime> communication_time(std::span<const double> t, std::span<const double> p_single,
                                                    std::span<const double> p_coll, double t_start);

} // namespace onf::analysis
