#include "onf/app/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <thread>

#include "onf/analysis/sweep.hpp"
#include "onf/app/config.hpp"
#include "onf/app/pipeline.hpp"
#include "onf/bath/spectral.hpp"
#include "onf/constants.hpp"
#include "onf/error.hpp"
#include "onf/io/csv.hpp"

namespace onf::app {

namespace fsys = std::filesystem;
using nlohmann::json;

namespace {

struct Context {
    RunConfig config;
    std::string provenance;
    fsys::path out;
    std::ostream* log;
};

std::string radius_label(double a_nm)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "a%gnm", a_nm);
    return buf;
}

std::string stem(const Context& ctx, const std::string& model, double a_nm, double d_value)
{
    return model + "_" + radius_label(a_nm) + "_" + separation_label(ctx.config, d_value);
}

void write(const Context& ctx, const std::string& name, const std::string& content)
{
    io::write_file_atomic(ctx.out / name, content);
    *ctx.log << "wrote " << (ctx.out / name).string() << '\n';
}

void write_json(const Context& ctx, const std::string& name, json j)
{
    j["provenance"] = ctx.provenance;
    write(ctx, name, j.dump(2) + "\n");
}

json cutoff_json(const std::optional<bath::CutoffChoice>& c)
{
    if (!c)
        return nullptr;
    return {{"omega_rad_s", c->omega},
            {"order", c->order},
            {"checked_omegas_rad_s", c->checked_omegas},
            {"observables", c->observables},
            {"max_relative_change", c->max_relative_change}};
}

int cmd_dispersion(const Context& ctx)
{
    for (const auto& model : ctx.config.models) {
        for (double a_nm : ctx.config.a_nm) {
            const Fiber f = prepare_fiber(ctx.config, model, a_nm);
            const auto& t = f.table;
            const std::size_t n = t.size();
            std::vector<double> k0(n), k1(n), w350(n), vg(n), vp(n), vinf(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double nidx = f.model.refractive_index(t.omega[i]);
                k0[i] = t.omega[i] / speed_of_light;
                k1[i] = nidx * t.omega[i] / speed_of_light;
                w350[i] = t.omega[i] / omega_350;
                vg[i] = t.v_g[i] / speed_of_light;
                vp[i] = t.v_p[i] / speed_of_light;
                vinf[i] = 1.0 / nidx;
            }
            const std::string tag = model + "_" + radius_label(a_nm);
            write(ctx, "dispersion_" + tag + ".csv",
                  io::csv_document(ctx.provenance,
                                   {"omega_rad_s", "beta_rad_m", "beta_prime_s_m", "v_g_m_s", "v_p_m_s",
                                    "k_vacuum_rad_m", "k_bulk_rad_m"},
                                   {&t.omega, &t.beta, &t.beta_prime, &t.v_g, &t.v_p, &k0, &k1}));
            write(ctx, "velocities_" + tag + ".csv",
                  io::csv_document(ctx.provenance,
                                   {"omega_rad_s", "omega_over_omega350", "v_g_over_c", "v_p_over_c",
                                    "v_inf_over_c"},
                                   {&t.omega, &w350, &vg, &vp, &vinf}));
            write_json(ctx, "dispersion_" + tag + ".json",
                       {{"model", f.model.name()},
                        {"a_nm", a_nm},
                        {"omega0_rad_s", f.omega0},
                        {"beta0_rad_m", f.beta0},
                        {"v_g0_m_s", f.v_g0},
                        {"d_omega_rad_s", t.grid.d_omega},
                        {"rows", n},
                        {"warnings", t.warnings}});
        }
    }
    return exit_ok;
}

int cmd_spectrum(const Context& ctx)
{
    for (const auto& model : ctx.config.models) {
        for (double a_nm : ctx.config.a_nm) {
            const Fiber f = prepare_fiber(ctx.config, model, a_nm);
            for (double dv : ctx.config.separations) {
                const CaseKernels k(ctx.config, f, separation_m(ctx.config, f, dv));
                const auto& g = k.spectrum();
                std::vector<double> w, w350, s1, s2;
                for (std::size_t i = f.table.grid.first; i < g.size(); ++i) {
                    w.push_back(g.omega(i));
                    w350.push_back(g.omega(i) / omega_350);
                    s1.push_back(g.s_one[i]);
                    s2.push_back(g.s_two[i]);
                }
                const std::string s = stem(ctx, model, a_nm, dv);
                write(ctx, "spectrum_" + s + ".csv",
                      io::csv_document(ctx.provenance, {"omega_rad_s", "omega_over_omega350", "S_one", "S_two"},
                                       {&w, &w350, &s1, &s2}));
                write_json(ctx, "spectrum_" + s + ".json",
                           {{"cutoff_omega_rad_s", g.cutoff_omega},
                            {"cutoff", cutoff_json(k.cutoff())},
                            {"prefactor", g.prefactor},
                            {"coupling_scale_per_s", g.coupling_scale},
                            {"gamma_markov_per_s", bath::markovian_rate(g, f.omega0)},
                            {"separation_nm", k.separation() / nm}});
            }
        }
    }
    return exit_ok;
}

json correlation_sidecar(const bath::CorrelationFunction& c, const bath::SpectralGrid& g,
                         const std::optional<bath::CutoffChoice>& cutoff, double n1)
{
    const auto p = bath::peak_diagnostics(c);
    json peaks = {{"peak_time_fs", p.peak_time / fs}, {"peak_abs", p.peak_abs}, {"fwhm_fs", p.fwhm / fs}};
    if (p.has_pair) {
        peaks["t_minus_fs"] = p.t_minus / fs;
        peaks["t_plus_fs"] = p.t_plus / fs;
        peaks["separation_fs"] = p.separation / fs;
        peaks["expected_2dn1_over_c_fs"] = 2.0 * c.separation * n1 / speed_of_light / fs;
    }
    return {{"kind", c.kind == bath::CorrelationKind::OnePoint ? "one_point" : "two_point"},
            {"cutoff_omega_rad_s", c.cutoff_omega},
            {"cutoff", cutoff_json(cutoff)},
            {"d_omega_rad_s", c.d_omega},
            {"n_fft", c.n_fft},
            {"dt_fs", c.dt / fs},
            {"coupling_scale_per_s", c.coupling_scale},
            {"prefactor", g.prefactor},
            {"separation_nm", c.separation / nm},
            {"peaks", peaks}};
}

int cmd_correlations(const Context& ctx)
{
    for (const auto& model : ctx.config.models) {
        for (double a_nm : ctx.config.a_nm) {
            const Fiber f = prepare_fiber(ctx.config, model, a_nm);
            for (double dv : ctx.config.separations) {
                const CaseKernels k(ctx.config, f, separation_m(ctx.config, f, dv));
                const auto [mm, mn] = k.at_level(0);
                const std::string s = stem(ctx, model, a_nm, dv);
                const double n1 = f.model.refractive_index(f.omega0);
                write(ctx, "correlation_" + s + "_mm.csv", bath::correlation_csv(mm, ctx.provenance));
                write(ctx, "correlation_" + s + "_mn.csv", bath::correlation_csv(mn, ctx.provenance));
                write_json(ctx, "correlation_" + s + "_mm.json", correlation_sidecar(mm, k.spectrum(), k.cutoff(), n1));
                write_json(ctx, "correlation_" + s + "_mn.json", correlation_sidecar(mn, k.spectrum(), k.cutoff(), n1));
            }
        }
    }
    return exit_ok;
}

json convergence_json(const dynamics::ConvergenceRecord& r)
{
    std::vector<double> h;
    for (double x : r.h)
        h.push_back(x / fs);
    return {{"h_fs", h}, {"max_population_change", r.max_change}, {"converged", r.converged}};
}

void write_case(const Context& ctx, const std::string& s, const CaseResult& r, const Fiber& f)
{
    for (const auto& [state, e] : r.evolutions) {
        write(ctx, "evolution_" + s + "_" + state + ".csv", dynamics::evolution_csv(e, ctx.provenance));
        write_json(ctx, "evolution_" + s + "_" + state + ".json",
                   {{"state", state},
                    {"h_fs", e.h / fs},
                    {"T_fs", ctx.config.solver.T_fs},
                    {"convergence", convergence_json(r.convergence.at(state))},
                    {"kernel",
                     {{"model", f.model.name()},
                      {"a_nm", f.a / nm},
                      {"R_nm", f.R / nm},
                      {"d_nm", r.report.d / nm},
                      {"cutoff", cutoff_json(r.cutoff)}}}});
    }
    std::vector<double> t(r.gammas.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = r.gammas.t[i] / fs;
    const auto rates = analysis::collective_rates_from_integrals(r.gammas);
    const auto q = r.gammas.quotient();
    write(ctx, "gamma_" + s + ".csv",
          io::csv_document(ctx.provenance, {"t_fs", "gamma_per_s", "gamma_mn_per_s", "gamma_minus_per_s",
                                            "gamma_plus_per_s", "quotient"},
                           {&t, &r.gammas.gamma, &r.gammas.gamma_mn, &rates.gamma_minus, &rates.gamma_plus, &q}));
    write_json(ctx, "analysis_" + s + ".json", analysis::report_json(r.report));
}

int cmd_evolve(const Context& ctx)
{
    for (const auto& model : ctx.config.models) {
        for (double a_nm : ctx.config.a_nm) {
            const Fiber f = prepare_fiber(ctx.config, model, a_nm);
            for (double dv : ctx.config.separations) {
                const auto r = run_case(ctx.config, f, dv);
                write_case(ctx, stem(ctx, model, a_nm, dv), r, f);
            }
        }
    }
    return exit_ok;
}

template <class F>
void parallel_for(std::size_t n, int jobs, F&& body)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            body(i);
    };
    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < std::min(workers, n); ++w)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
}

int cmd_sweep(const Context& ctx, int jobs)
{
    const auto& c = ctx.config;
    struct FiberSlot {
        std::string model;
        double a_nm;
        std::optional<Fiber> fiber;
        std::string error;
    };
    std::vector<FiberSlot> fibers;
    for (const auto& m : c.models)
        for (double a : c.a_nm)
            fibers.push_back({m, a, std::nullopt, {}});
    parallel_for(fibers.size(), jobs, [&](std::size_t i) {
        try {
            fibers[i].fiber = prepare_fiber(c, fibers[i].model, fibers[i].a_nm);
        } catch (const std::exception& e) {
            fibers[i].error = e.what();
        }
    });

    struct Case {
        std::size_t fiber;
        double d_value;
    };
    std::vector<Case> cases;
    for (std::size_t i = 0; i < fibers.size(); ++i)
        for (double dv : c.separations)
            cases.push_back({i, dv});
    std::vector<analysis::SweepRow> rows(cases.size());
    std::mutex log_mutex;
    parallel_for(cases.size(), jobs, [&](std::size_t i) {
        const auto& slot = fibers[cases[i].fiber];
        auto& row = rows[i];
        row.model = slot.model;
        row.a = slot.a_nm * nm;
        row.d_units = c.separation_unit == "nm" ? std::nan("") : cases[i].d_value;
        if (!slot.fiber) {
            row.error = slot.error;
        } else {
            try {
                const auto r = run_case(c, *slot.fiber, cases[i].d_value);
                row.report = r.report;
                row.d = r.report.d;
                row.d_units = r.report.d_units;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
        const std::lock_guard lock(log_mutex);
        *ctx.log << "case " << slot.model << ' ' << radius_label(slot.a_nm) << ' '
                 << separation_label(c, cases[i].d_value) << ": " << (row.error.empty() ? "ok" : row.error)
                 << '\n';
    });

    const auto summary = analysis::radius_sweep_report(std::move(rows));
    write(ctx, "sweep.csv", analysis::sweep_csv(summary.rows, ctx.provenance));
    json spreads = json::array();
    for (const auto& s : summary.spreads)
        spreads.push_back({{"model", s.model},
                           {"a_nm", s.a / nm},
                           {"separations", s.separations},
                           {"spread_quotient_plus", s.spread_plus},
                           {"spread_quotient_minus", s.spread_minus}});
    json failures = json::array();
    json reports = json::array();
    for (const auto& r : summary.rows) {
        if (!r.error.empty())
            failures.push_back({{"model", r.model}, {"a_nm", r.a / nm}, {"d_nm", r.d / nm}, {"error", r.error}});
        if (r.report)
            reports.push_back(analysis::report_json(*r.report));
    }
    write_json(ctx, "sweep_summary.json",
               {{"cases", summary.rows.size()},
                {"failures", failures},
                {"separation_spread", spreads},
                {"reports", reports}});
    return summary.failures > 0 ? exit_partial : exit_ok;
}

// Rebuilds a correlation function from its CSV export.
bath::CorrelationFunction read_correlation(const fsys::path& path)
{
    const auto table = io::read_csv(path);
    const auto& t = table.column("t_fs");
    const auto& re = table.column("re_F");
    const auto& im = table.column("im_F");
    if (t.size() < 2)
        throw ConfigError("analyze: " + path.string() + " has fewer than two rows");
    bath::CorrelationFunction f;
    f.dt = (t[1] - t[0]) * fs;
    f.samples.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        f.samples[i] = {re[i], im[i]};
    f.zero_index = static_cast<std::size_t>(std::llround(-t[0] * fs / f.dt));
    return f;
}

dynamics::EvolutionResult read_evolution(const fsys::path& path)
{
    const auto table = io::read_csv(path);
    const auto& t = table.column("t_fs");
    const auto& re1 = table.column("re_c1");
    const auto& im1 = table.column("im_c1");
    const auto& re2 = table.column("re_c2");
    const auto& im2 = table.column("im_c2");
    dynamics::EvolutionResult r;
    for (std::size_t i = 0; i < t.size(); ++i) {
        r.t.push_back(t[i] * fs);
        r.c1.emplace_back(re1[i], im1[i]);
        r.c2.emplace_back(re2[i], im2[i]);
    }
    if (r.t.size() < 2)
        throw ConfigError("analyze: " + path.string() + " has fewer than two rows");
    r.h = r.t[1] - r.t[0];
    r.fill_populations();
    return r;
}

int cmd_analyze(const Context& ctx)
{
    for (const auto& model : ctx.config.models) {
        for (double a_nm : ctx.config.a_nm) {
            const Fiber f = prepare_fiber(ctx.config, model, a_nm);
            for (double dv : ctx.config.separations) {
                const std::string s = stem(ctx, model, a_nm, dv);
                std::map<std::string, dynamics::EvolutionResult> evolutions;
                for (const char* state : {"single", "symmetric", "antisymmetric"}) {
                    const auto p = ctx.out / ("evolution_" + s + "_" + state + ".csv");
                    if (fsys::exists(p))
                        evolutions[state] = read_evolution(p);
                }
                if (evolutions.empty())
                    throw ConfigError("analyze: no evolution files for " + s + " in " + ctx.out.string());
                analysis::GammaSeries gammas;
                const auto mm = ctx.out / ("correlation_" + s + "_mm.csv");
                const auto mn = ctx.out / ("correlation_" + s + "_mn.csv");
                if (fsys::exists(mm) && fsys::exists(mn))
                    gammas = analysis::gamma_integrals(read_correlation(mm), read_correlation(mn),
                                                       ctx.config.solver.T_fs * fs);
                const double d = separation_m(ctx.config, f, dv);
                auto report = analyse(ctx.config, f, d, d * f.beta0 / pi, evolutions, gammas);
                write_json(ctx, "analysis_" + s + ".json", analysis::report_json(report));
            }
        }
    }
    return exit_ok;
}

} // namespace

int run_command(const std::string& name, const CommandOptions& options, std::ostream& log)
{
    Context ctx;
    ctx.config = options.config_path.empty() ? parse_config("{}") : load_config(options.config_path);
    if (!options.out_dir.empty())
        ctx.config.output_dir = options.out_dir;
    if (!options.cache_dir.empty())
        ctx.config.cache_dir = options.cache_dir;
    if (options.jobs < 1)
        throw ConfigError("--jobs must be >= 1");
    ctx.provenance = "onfsim " + name + " config=" + config_hash(ctx.config);
    ctx.out = ctx.config.output_dir;
    ctx.log = &log;
    std::error_code ec;
    fsys::create_directories(ctx.out, ec);
    if (ec)
        throw ConfigError("cannot create output directory " + ctx.out.string() + ": " + ec.message());
    write(ctx, "effective_config.json", to_json(ctx.config).dump(2) + "\n");

    if (name == "dispersion")
        return cmd_dispersion(ctx);
    if (name == "spectrum")
        return cmd_spectrum(ctx);
    if (name == "correlations")
        return cmd_correlations(ctx);
    if (name == "evolve")
        return cmd_evolve(ctx);
    if (name == "sweep")
        return cmd_sweep(ctx, options.jobs);
    if (name == "analyze")
        return cmd_analyze(ctx);
    throw ConfigError("unknown command '" + name + "'");
}

} // namespace onf::app
