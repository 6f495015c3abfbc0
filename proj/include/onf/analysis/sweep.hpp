#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "onf/analysis/fits.hpp"
#include "onf/analysis/rates.hpp"

namespace onf::analysis {

// Rates are population decay rates (1/s); NaN marks quantities that were not computed.
struct AnalysisReport {
    std::string model;
    double a = 0.0;  // m
    double R = 0.0;  // m
    double d = 0.0;  // m
    double d_units = 0.0; // d in units of pi / beta0
    double omega0 = 0.0;
    double beta0 = 0.0;
    double v_g0 = 0.0;   // m/s
    double gamma_markov = 0.0; // amplitude rate pi S(omega0)
    double fit_start = 0.0;    // s

    std::optional<DecayFit> single;
    std::optional<DecayFit> symmetric;
    std::optional<DecayFit> antisymmetric;
    double gamma_single = std::numeric_limits<double>::quiet_NaN();
    double gamma_plus = std::numeric_limits<double>::quiet_NaN();  // larger collective rate
    double gamma_minus = std::numeric_limits<double>::quiet_NaN(); // smaller collective rate
    double quotient_plus = std::numeric_limits<double>::quiet_NaN();
    double quotient_minus = std::numeric_limits<double>::quiet_NaN();

    std::optional<CommunicationTime> com_symmetric;
    std::optional<CommunicationTime> com_antisymmetric;
    double v_com_symmetric = std::numeric_limits<double>::quiet_NaN();
    double v_com_antisymmetric = std::numeric_limits<double>::quiet_NaN();

    Establishment establishment;
    double t_vg = 0.0; // d / v_g(omega0), s

    // Fills the derived rates, quotients and speeds from the fits.
    void finalize();
};

nlohmann::json report_json(const AnalysisReport& r);

struct SweepRow {
    std::string model;
    double a = 0.0;
    double d = 0.0;
    double d_units = 0.0;
    std::optional<AnalysisReport> report;
    std::string error; // non-empty when the case failed
};

std::vector<std::string> sweep_header();
std::vector<double> sweep_values(const SweepRow& row);
std::string sweep_csv(const std::vector<SweepRow>& rows, std::string_view provenance);

// Relative spread (standard deviation over mean) of the collective quotients
// across separations, per model and radius.
struct SeparationSpread {
    std::string model;
    double a = 0.0;
    std::size_t separations = 0;
    double spread_plus = 0.0;
    double spread_minus = 0.0;
};

struct SweepSummary {
    std::vector<SweepRow> rows;
    std::vector<SeparationSpread> spreads;
    std::size_t failures = 0;
};

SweepSummary radius_sweep_report(std::vector<SweepRow> rows);

} // namespace onf::analysis
