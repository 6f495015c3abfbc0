#include "onf/analysis/fits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "onf/error.hpp"

namespace onf::analysis {

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> p, double t_start, double t_end)
{
    if (t.size() != p.size())
        throw ConfigError("fit: time and population series differ in length");
    if (t_end <= 0.0)
        t_end = std::numeric_limits<double>::infinity();

    double n = 0.0, st = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_start || t[i] > t_end)
            continue;
        if (!(p[i] > 0.0))
            throw NumericalError("fit: non-positive population at t = " + std::to_string(t[i]) + " s");
        n += 1.0;
        st += t[i];
        sy += std::log(p[i]);
    }
    if (n < 10.0)
        throw NumericalError("fit: fewer than 10 samples in the fit window");
    const double tm = st / n;
    const double ym = sy / n;
    double stt = 0.0, sty = 0.0;
    DecayFit f;
    f.t_start = std::numeric_limits<double>::infinity();
    f.t_end = -f.t_start;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_start || t[i] > t_end)
            continue;
        const double dt = t[i] - tm;
        stt += dt * dt;
        sty += dt * (std::log(p[i]) - ym);
        f.t_start = std::min(f.t_start, t[i]);
        f.t_end = std::max(f.t_end, t[i]);
    }
    const double slope = sty / stt;
    const double intercept = ym - slope * tm;
    double ssr = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_start || t[i] > t_end)
            continue;
        const double r = std::log(p[i]) - (intercept + slope * t[i]);
        ssr += r * r;
    }
    f.rate = -slope;
    const double var = ssr / (n - 2.0);
    f.rate_stderr = std::sqrt(var / stt);
    f.log_intercept_stderr = std::sqrt(var * (1.0 / n + tm * tm / stt));
    f.covariance = var * tm / stt;
    f.log_intercept = intercept;
    f.rms_residual = std::sqrt(ssr / n);
    f.samples = static_cast<std::size_t>(n);
    return f;
}

std::optional<CommunicationTime> communication_time(std::span<const double> t, std::span<const double> p_single,
                                                    std::span<const double> p_coll, double t_start)
{
    CommunicationTime c;
    c.single = fit_decay_rate(t, p_single, t_start);
    c.collective = fit_decay_rate(t, p_coll, t_start);
    const double ds = c.collective.rate - c.single.rate;
    const double sigma = std::hypot(c.single.rate_stderr, c.collective.rate_stderr);
    if (std::abs(ds) <= 3.0 * sigma || std::abs(ds) <= 1e-12 * std::abs(c.single.rate))
        return std::nullopt;
    // ln P = b - rate t for both lines
    const double db = c.collective.log_intercept - c.single.log_intercept;
    c.t_com = db / ds;
    const auto& a = c.single;
    const auto& b = c.collective;
    const double var = a.log_intercept_stderr * a.log_intercept_stderr
                       + b.log_intercept_stderr * b.log_intercept_stderr + c.t_com * c.t_com * sigma * sigma
                       - 2.0 * c.t_com * (a.covariance + b.covariance);
    c.t_com_stderr = std::sqrt(std::max(var, 0.0)) / std::abs(ds);
    return c;
}

} // namespace onf::analysis
