#include "onf/app/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "onf/analysis/fits.hpp"
#include "onf/bath/spectral.hpp"
#include "onf/constants.hpp"
#include "onf/error.hpp"

namespace onf::app {

using waveguide::DielectricKind;
using waveguide::DielectricModel;

DielectricModel make_model(const RunConfig& c, const std::string& model, double omega0)
{
    if (model == "constant")
        return DielectricModel::constant(c.n1);
    if (model == "drude_lorentz") {
        const double omega_R = c.omega_R > 0.0 ? c.omega_R : omega_350;
        const double gamma_R = c.gamma_R >= 0.0 ? c.gamma_R : waveguide::dipole_damping_rate(omega_R);
        return DielectricModel::calibrated(omega0, c.n1, omega_R, gamma_R);
    }
    throw ConfigError("unknown model '" + model + "'");
}

double resolve_omega0(const RunConfig& c, const std::string& model, double a)
{
    const double lambda0 = c.lambda0_nm * nm;
    if (c.omega0_policy == "vacuum_lambda")
        return omega_from_wavelength(lambda0);
    // beta0_sets_lambda: omega0 such that beta(omega0) = 2 pi / lambda0
    const double beta0 = 2.0 * pi / lambda0;
    auto excess = [&](double w) { return waveguide::solve_beta(make_model(c, model, w), a, w).beta - beta0; };
    double lo = beta0 * speed_of_light / c.n1 * (1.0 + 1e-9);
    double hi = beta0 * speed_of_light * (1.0 - 1e-9);
    if (!(excess(lo) < 0.0 && excess(hi) > 0.0))
        throw NumericalError("beta0_sets_lambda: no frequency with beta = 2 pi / lambda0");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

waveguide::FrequencyGrid frequency_grid(const RunConfig& c, const DielectricModel& model, double omega0)
{
    waveguide::FrequencyGrid g;
    g.d_omega = 2.0 * pi / (static_cast<double>(c.grid.n_fft) * c.solver.h_fs * fs);
    double top = c.grid.omega_max_multiplier * omega0;
    if (model.kind() == DielectricKind::DrudeLorentz)
        top = std::min(top, model.omega_R());
    g.first = 1;
    g.count = waveguide::last_index_below(g.d_omega, top);
    if (g.count < 16)
        throw ConfigError("frequency grid: fewer than 16 points below the table top; increase grid.n_fft or h_fs");
    if (g.count + 1 > c.grid.n_fft)
        throw ConfigError("frequency grid: more spectral points than grid.n_fft");
    return g;
}

Fiber prepare_fiber(const RunConfig& c, const std::string& model, double a_nm)
{
    Fiber f;
    f.model_name = model;
    f.a = a_nm * nm;
    f.R = c.R_nm * nm;
    f.omega0 = resolve_omega0(c, model, f.a);
    f.model = make_model(c, model, f.omega0);
    const auto grid = frequency_grid(c, f.model, f.omega0);
    if (c.cache_dir.empty()) {
        f.table = waveguide::build_dispersion_table(f.model, f.a, grid);
    } else {
        f.table = waveguide::DispersionCache(c.cache_dir).get_or_build(f.model, f.a, grid, &f.cache_outcome);
    }
    if (!(f.omega0 > f.table.omega.front() && f.omega0 < f.table.omega.back()))
        throw NumericalError("omega0 lies outside the dispersion table");
    f.modes = waveguide::build_mode_table(f.table);
    f.beta0 = waveguide::solve_beta(f.model, f.a, f.omega0).beta;
    f.v_g0 = f.table.interpolate(f.table.v_g, f.omega0);
    return f;
}

double separation_m(const RunConfig& c, const Fiber& f, double value)
{
    return c.separation_unit == "nm" ? value * nm : value * pi / f.beta0;
}

std::string separation_label(const RunConfig& c, double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, c.separation_unit == "nm" ? "d%gnm" : "d%gpi", value);
    return buf;
}

double cutoff_observable(const bath::CorrelationFunction& mm, const bath::CorrelationFunction& mn, double T,
                         double fit_start)
{
    const auto g = analysis::gamma_integrals(mm, mn, T);
    const auto r = analysis::collective_rates_from_integrals(g);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g.t[i] < fit_start)
            continue;
        sum += r.gamma_plus[i];
        ++n;
    }
    if (n == 0)
        throw NumericalError("cutoff observable: empty averaging window");
    return sum / static_cast<double>(n);
}

CaseKernels::CaseKernels(const RunConfig& c, const Fiber& f, double d) : config_(&c), fiber_(&f), d_(d)
{
    double cutoff_omega = f.table.omega.back();
    if (f.model.kind() == DielectricKind::DrudeLorentz && d > 0.0) {
        const double T = c.solver.T_fs * fs;
        const double fit_start = c.thresholds.fit_start_fs * fs;
        auto observable = [&](double w) {
            const auto g = build_grid(w);
            const auto n = c.grid.n_fft;
            return cutoff_observable(bath::correlation_function(g, bath::CorrelationKind::OnePoint, f.omega0, n),
                                     bath::correlation_function(g, bath::CorrelationKind::TwoPoint, f.omega0, n),
                                     T, fit_start);
        };
        cutoff_ = bath::choose_cutoff(f.table, d, {c.cutoff.zero_index, c.cutoff.tolerance}, observable);
        cutoff_omega = cutoff_->omega;
    }
    grid_ = build_grid(cutoff_omega);
}

bath::SpectralGrid CaseKernels::build_grid(double cutoff_omega) const
{
    const auto& f = *fiber_;
    auto g = bath::one_point_spectral_density(f.table, f.modes, f.R, config_->gamma_target, f.omega0, cutoff_omega);
    bath::two_point_integrand(g, f.table, d_);
    return g;
}

std::pair<bath::CorrelationFunction, bath::CorrelationFunction> CaseKernels::at_level(int level, bool isolated) const
{
    const std::size_t n = config_->grid.n_fft << level;
    auto mm = bath::correlation_function(grid_, bath::CorrelationKind::OnePoint, fiber_->omega0, n);
    if (isolated) {
        auto mn = mm;
        mn.kind = bath::CorrelationKind::TwoPoint;
        std::fill(mn.samples.begin(), mn.samples.end(), std::complex<double>(0.0));
        return {std::move(mm), std::move(mn)};
    }
    return {std::move(mm), bath::correlation_function(grid_, bath::CorrelationKind::TwoPoint, fiber_->omega0, n)};
}

dynamics::KernelFactory CaseKernels::factory(bool isolated) const
{
    return [this, isolated](int level) { return at_level(level, isolated); };
}

namespace {

// Samples of r on the grid with step h (a multiple of r.h).
dynamics::EvolutionResult resample(const dynamics::EvolutionResult& r, double h)
{
    const auto stride = static_cast<std::size_t>(std::llround(h / r.h));
    if (stride <= 1)
        return r;
    dynamics::EvolutionResult out;
    out.h = r.h * static_cast<double>(stride);
    for (std::size_t i = 0; i < r.size(); i += stride) {
        out.t.push_back(r.t[i]);
        out.c1.push_back(r.c1[i]);
        out.c2.push_back(r.c2[i]);
    }
    out.fill_populations();
    return out;
}

} // namespace

analysis::AnalysisReport analyse(const RunConfig& c, const Fiber& f, double d, double d_units,
                                 const std::map<std::string, dynamics::EvolutionResult>& evolutions,
                                 const analysis::GammaSeries& gammas)
{
    analysis::AnalysisReport r;
    r.model = f.model_name;
    r.a = f.a;
    r.R = f.R;
    r.d = d;
    r.d_units = d_units;
    r.omega0 = f.omega0;
    r.beta0 = f.beta0;
    r.v_g0 = f.v_g0;
    r.fit_start = c.thresholds.fit_start_fs * fs;
    r.t_vg = d / f.v_g0;

    double h = 0.0;
    for (const auto& [name, e] : evolutions)
        h = std::max(h, e.h);
    std::map<std::string, dynamics::EvolutionResult> common;
    for (const auto& [name, e] : evolutions)
        common[name] = resample(e, h);

    const auto single = common.find("single");
    if (single != common.end())
        r.single = analysis::fit_decay_rate(single->second.t, single->second.p1, r.fit_start);
    if (const auto s = common.find("symmetric"); s != common.end()) {
        r.symmetric = analysis::fit_decay_rate(s->second.t, s->second.p_plus, r.fit_start);
        if (single != common.end())
            r.com_symmetric = analysis::communication_time(s->second.t, single->second.p1, s->second.p_plus,
                                                           r.fit_start);
    }
    if (const auto s = common.find("antisymmetric"); s != common.end()) {
        r.antisymmetric = analysis::fit_decay_rate(s->second.t, s->second.p_minus, r.fit_start);
        if (single != common.end())
            r.com_antisymmetric = analysis::communication_time(s->second.t, single->second.p1, s->second.p_minus,
                                                               r.fit_start);
    }

    if (gammas.size() > 0) {
        analysis::EstablishmentOptions opt;
        opt.threshold = c.thresholds.establish_const;
        opt.midpoint_tolerance = c.thresholds.establish_dl;
        const auto rule = f.model.kind() == DielectricKind::Constant ? analysis::EstablishmentRule::Threshold
                                                                    : analysis::EstablishmentRule::Extrema;
        r.establishment = analysis::establishment_time(gammas.t, gammas.quotient(), rule, opt);
    }
    r.finalize();
    return r;
}

CaseResult run_case(const RunConfig& c, const Fiber& f, double d_value)
{
    const double d = separation_m(c, f, d_value);
    const double d_units = d * f.beta0 / pi;
    const CaseKernels kernels(c, f, d);
    const double T = c.solver.T_fs * fs;

    CaseResult out;
    out.cutoff = kernels.cutoff();
    std::vector<std::string> states = {"single"};
    for (const auto& s : c.initial_states)
        if (std::find(states.begin(), states.end(), s) == states.end())
            states.push_back(s);
    for (const auto& s : states) {
        dynamics::ConvergenceRecord rec;
        out.evolutions[s] = dynamics::convergence_check(kernels.factory(s == "single"), dynamics::InitialState::named(s), T,
                                                        c.solver.tolerance, c.solver.max_halvings, &rec);
        out.convergence[s] = rec;
    }
    const auto [mm, mn] = kernels.at_level(0);
    out.gammas = analysis::gamma_integrals(mm, mn, T);
    out.report = analyse(c, f, d, d_units, out.evolutions, out.gammas);
    out.report.gamma_markov = bath::markovian_rate(kernels.spectrum(), f.omega0);
    return out;
}

} // namespace onf::app
