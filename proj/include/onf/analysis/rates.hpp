#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "onf/bath/correlation.hpp"

namespace onf::analysis {

// gamma(t) = int_0^t Re F_mm, gamma_mn(t) = int_0^t Re F_mn (cumulative trapezoid).
struct GammaSeries {
    std::vector<double> t; // s
    std::vector<double> gamma;
    std::vector<double> gamma_mn;

    std::size_t size() const { return t.size(); }
    // |gamma_mn| / gamma, zero where gamma <= 0.
    std::vector<double> quotient() const;
};

GammaSeries gamma_integrals(const bath::CorrelationFunction& f_mm, const bath::CorrelationFunction& f_mn, double T);

struct CollectiveRates {
    std::vector<double> gamma_minus; // gamma - |gamma_mn|
    std::vector<double> gamma_plus;  // gamma + |gamma_mn|
};

CollectiveRates collective_rates_from_integrals(const GammaSeries& g);

enum class EstablishmentRule { Threshold, Extrema };

struct EstablishmentOptions {
    double threshold = 0.99;  // Threshold rule
    double midpoint_tolerance = 0.01; // Extrema rule
    int smoothing = 3;        // moving-average width
    int extremum_window = 5;
};

struct Establishment {
    bool established = false;
    double t_est = 0.0;      // s
    double max_quotient = 0.0;
    std::size_t extrema_found = 0;
};

// Threshold: first time the quotient reaches the threshold and stays there.
// Extrema: midpoint abscissa of the first pair of successive extrema of the
// smoothed quotient whose mean lies within the tolerance of 1.
Establishment establishment_time(std::span<const double> t, std::span<const double> quotient, EstablishmentRule rule,
                                 const EstablishmentOptions& options = {});

} // namespace onf::analysis
