#pragma once

#include <map>
#include <optional>
#include <string>

#include "onf/analysis/sweep.hpp"
#include "onf/app/config.hpp"
#include "onf/bath/correlation.hpp"
#include "onf/dynamics/evolve.hpp"
#include "onf/waveguide/mode_profile.hpp"
#include "onf/waveguide/table_io.hpp"

namespace onf::app {

// Everything that depends on (model, a) only.
struct Fiber {
    std::string model_name;
    waveguide::DielectricModel model;
    double a = 0.0;
    double R = 0.0;
    double omega0 = 0.0;
    double beta0 = 0.0;
    double v_g0 = 0.0;
    waveguide::DispersionTable table;
    waveguide::ModeTable modes;
    waveguide::DispersionCache::Outcome cache_outcome = waveguide::DispersionCache::Outcome::Miss;
};

waveguide::DielectricModel make_model(const RunConfig& c, const std::string& model, double omega0);
// omega0 under the configured policy.
double resolve_omega0(const RunConfig& c, const std::string& model, double a);
// d_omega = 2 pi / (n_fft h); rows from d_omega up to the model's table top.
waveguide::FrequencyGrid frequency_grid(const RunConfig& c, const waveguide::DielectricModel& model, double omega0);

Fiber prepare_fiber(const RunConfig& c, const std::string& model, double a_nm);

// Separation in m for a configured value (pi/beta0 units or nm).
double separation_m(const RunConfig& c, const Fiber& f, double value);
std::string separation_label(const RunConfig& c, double value);

// Spectral grid, cutoff and correlation functions for one separation.
class CaseKernels {
public:
    CaseKernels(const RunConfig& c, const Fiber& f, double d);

    const bath::SpectralGrid& spectrum() const { return grid_; }
    const std::optional<bath::CutoffChoice>& cutoff() const { return cutoff_; }
    double separation() const { return d_; }
    // Kernels with step h / 2^level. `isolated` zeroes F_mn (one atom alone).
    std::pair<bath::CorrelationFunction, bath::CorrelationFunction> at_level(int level, bool isolated = false) const;
    dynamics::KernelFactory factory(bool isolated = false) const;

private:
    bath::SpectralGrid build_grid(double cutoff_omega) const;

    const RunConfig* config_;
    const Fiber* fiber_;
    double d_;
    std::optional<bath::CutoffChoice> cutoff_;
    bath::SpectralGrid grid_;
};

// Late-time mean of gamma(t) + |gamma_mn(t)|, the cutoff convergence observable.
double cutoff_observable(const bath::CorrelationFunction& mm, const bath::CorrelationFunction& mn, double T,
                         double fit_start);

struct CaseResult {
    analysis::AnalysisReport report;
    std::map<std::string, dynamics::EvolutionResult> evolutions; // by initial state
    std::map<std::string, dynamics::ConvergenceRecord> convergence;
    std::optional<bath::CutoffChoice> cutoff;
    analysis::GammaSeries gammas;
};

// Evolves the configured initial states and analyses them. The "single" state
// is always included and is evolved as an isolated atom (F_mn = 0).
CaseResult run_case(const RunConfig& c, const Fiber& f, double d_value);

// Analysis of finished evolutions; shared by `evolve` and `analyze`.
analysis::AnalysisReport analyse(const RunConfig& c, const Fiber& f, double d, double d_units,
                                 const std::map<std::string, dynamics::EvolutionResult>& evolutions,
                                 const analysis::GammaSeries& gammas);

} // namespace onf::app
