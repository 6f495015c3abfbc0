#include "onf/analysis/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "onf/constants.hpp"
#include "onf/io/csv.hpp"

namespace onf::analysis {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

nlohmann::json number(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

nlohmann::json fit_json(const std::optional<DecayFit>& f)
{
    if (!f)
        return nullptr;
    return {{"rate_per_s", number(f->rate)},
            {"rate_stderr_per_s", number(f->rate_stderr)},
            {"log_intercept", number(f->log_intercept)},
            {"log_intercept_stderr", number(f->log_intercept_stderr)},
            {"rms_residual", number(f->rms_residual)},
            {"t_start_fs", f->t_start / fs},
            {"t_end_fs", f->t_end / fs},
            {"samples", f->samples}};
}

nlohmann::json com_json(const std::optional<CommunicationTime>& c, double v)
{
    if (!c)
        return nullptr;
    return {{"t_com_fs", c->t_com / fs}, {"t_com_stderr_fs", c->t_com_stderr / fs}, {"v_com_m_s", number(v)}};
}

} // namespace

void AnalysisReport::finalize()
{
    gamma_single = single ? single->rate : nan;
    const double rs = symmetric ? symmetric->rate : nan;
    const double ra = antisymmetric ? antisymmetric->rate : nan;
    if (symmetric && antisymmetric) {
        gamma_plus = std::max(rs, ra);
        gamma_minus = std::min(rs, ra);
    } else {
        gamma_plus = symmetric ? rs : nan;
        gamma_minus = antisymmetric ? ra : nan;
    }
    quotient_plus = gamma_plus / gamma_single;
    quotient_minus = gamma_minus / gamma_single;
    v_com_symmetric = com_symmetric && com_symmetric->t_com > 0.0 ? d / com_symmetric->t_com : nan;
    v_com_antisymmetric = com_antisymmetric && com_antisymmetric->t_com > 0.0 ? d / com_antisymmetric->t_com : nan;
}

nlohmann::json report_json(const AnalysisReport& r)
{
    nlohmann::json j;
    j["model"] = r.model;
    j["a_nm"] = r.a / nm;
    j["R_nm"] = r.R / nm;
    j["d_nm"] = r.d / nm;
    j["d_pi_over_beta0"] = r.d_units;
    j["omega0_rad_s"] = r.omega0;
    j["beta0_rad_m"] = r.beta0;
    j["v_g0_m_s"] = r.v_g0;
    j["gamma_markov_per_s"] = r.gamma_markov;
    j["fit_start_fs"] = r.fit_start / fs;
    j["fits"] = {{"single", fit_json(r.single)},
                 {"symmetric", fit_json(r.symmetric)},
                 {"antisymmetric", fit_json(r.antisymmetric)}};
    j["gamma_single_per_s"] = number(r.gamma_single);
    j["gamma_plus_per_s"] = number(r.gamma_plus);
    j["gamma_minus_per_s"] = number(r.gamma_minus);
    j["quotient_plus"] = number(r.quotient_plus);
    j["quotient_minus"] = number(r.quotient_minus);
    j["communication"] = {{"symmetric", com_json(r.com_symmetric, r.v_com_symmetric)},
                          {"antisymmetric", com_json(r.com_antisymmetric, r.v_com_antisymmetric)}};
    j["establishment"] = {{"established", r.establishment.established},
                          {"t_est_fs", r.establishment.established ? nlohmann::json(r.establishment.t_est / fs)
                                                                   : nlohmann::json(nullptr)},
                          {"max_quotient", r.establishment.max_quotient},
                          {"extrema_found", r.establishment.extrema_found}};
    j["t_vg_fs"] = r.t_vg / fs;
    return j;
}

std::vector<std::string> sweep_header()
{
    return {"a_nm", "d_nm", "d_pi_over_beta0", "gamma_single_per_s", "quotient_plus", "quotient_minus",
            "t_com_sym_fs", "t_com_anti_fs", "v_com_sym_over_c", "v_com_anti_over_c", "v_g_over_c",
            "t_est_fs", "t_vg_fs", "t_est_over_t_vg"};
}

std::vector<double> sweep_values(const SweepRow& row)
{
    std::vector<double> v = {row.a / nm, row.d / nm, row.d_units};
    if (!row.report) {
        v.resize(sweep_header().size(), nan);
        return v;
    }
    const auto& r = *row.report;
    const double t_est = r.establishment.established ? r.establishment.t_est : nan;
    v.insert(v.end(), {r.gamma_single, r.quotient_plus, r.quotient_minus,
                       r.com_symmetric ? r.com_symmetric->t_com / fs : nan,
                       r.com_antisymmetric ? r.com_antisymmetric->t_com / fs : nan,
                       r.v_com_symmetric / speed_of_light, r.v_com_antisymmetric / speed_of_light,
                       r.v_g0 / speed_of_light, t_est / fs, r.t_vg / fs, t_est / r.t_vg});
    return v;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, std::string_view provenance)
{
    std::ostringstream out;
    out << "# provenance: " << provenance << '\n' << "model";
    for (const auto& h : sweep_header())
        out << ',' << h;
    out << ",status\n";
    for (const auto& row : rows) {
        out << row.model;
        for (double x : sweep_values(row))
            out << ',' << io::format_double(x);
        out << ',' << (row.error.empty() ? "ok" : "failed") << '\n';
    }
    return out.str();
}

SweepSummary radius_sweep_report(std::vector<SweepRow> rows)
{
    SweepSummary s;
    std::map<std::pair<std::string, double>, std::vector<const AnalysisReport*>> groups;
    for (const auto& row : rows) {
        if (!row.error.empty() || !row.report) {
            ++s.failures;
            continue;
        }
        groups[{row.model, row.a}].push_back(&*row.report);
    }
    auto spread = [](const std::vector<double>& x) {
        if (x.size() < 2)
            return 0.0;
        double m = 0.0;
        for (double v : x)
            m += v;
        m /= static_cast<double>(x.size());
        double var = 0.0;
        for (double v : x)
            var += (v - m) * (v - m);
        return std::sqrt(var / static_cast<double>(x.size() - 1)) / std::abs(m);
    };
    for (const auto& [key, reports] : groups) {
        std::vector<double> qp, qm;
        for (const auto* r : reports) {
            if (std::isfinite(r->quotient_plus))
                qp.push_back(r->quotient_plus);
            if (std::isfinite(r->quotient_minus))
                qm.push_back(r->quotient_minus);
        }
        s.spreads.push_back({key.first, key.second, reports.size(), spread(qp), spread(qm)});
    }
    s.rows = std::move(rows);
    return s;
}

} // namespace onf::analysis
