#include "onf/analysis/rates.hpp"

#include <algorithm>
#include <cmath>

#include "onf/error.hpp"

namespace onf::analysis {

std::vector<double> GammaSeries::quotient() const
{
    std::vector<double> q(size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i)
        if (gamma[i] > 0.0)
            q[i] = std::abs(gamma_mn[i]) / gamma[i];
    return q;
}

GammaSeries gamma_integrals(const bath::CorrelationFunction& f_mm, const bath::CorrelationFunction& f_mn, double T)
{
    if (f_mm.dt != f_mn.dt)
        throw ConfigError("gamma_integrals: kernels are sampled on different grids");
    const auto a = f_mm.nonnegative();
    const auto b = f_mn.nonnegative();
    const auto steps = static_cast<std::size_t>(std::llround(T / f_mm.dt));
    if (a.size() < steps + 1 || b.size() < steps + 1)
        throw ConfigError("gamma_integrals: kernels do not cover the requested time span");
    GammaSeries g;
    g.t.resize(steps + 1);
    g.gamma.assign(steps + 1, 0.0);
    g.gamma_mn.assign(steps + 1, 0.0);
    const double h = f_mm.dt;
    for (std::size_t i = 1; i <= steps; ++i) {
        g.t[i] = static_cast<double>(i) * h;
        g.gamma[i] = g.gamma[i - 1] + 0.5 * h * (a[i - 1].real() + a[i].real());
        g.gamma_mn[i] = g.gamma_mn[i - 1] + 0.5 * h * (b[i - 1].real() + b[i].real());
    }
    return g;
}

CollectiveRates collective_rates_from_integrals(const GammaSeries& g)
{
    CollectiveRates r;
    r.gamma_minus.resize(g.size());
    r.gamma_plus.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        r.gamma_minus[i] = g.gamma[i] - std::abs(g.gamma_mn[i]);
        r.gamma_plus[i] = g.gamma[i] + std::abs(g.gamma_mn[i]);
    }
    return r;
}

namespace {

std::vector<double> moving_average(std::span<const double> x, int width)
{
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const std::ptrdiff_t half = width / 2;
    std::vector<double> y(x.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
        const std::ptrdiff_t hi = std::min(n - 1, i + half);
        double s = 0.0;
        for (std::ptrdiff_t j = lo; j <= hi; ++j)
            s += x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s / static_cast<double>(hi - lo + 1);
    }
    return y;
}

} // namespace

Establishment establishment_time(std::span<const double> t, std::span<const double> q, EstablishmentRule rule,
                                 const EstablishmentOptions& options)
{
    if (t.size() != q.size())
        throw ConfigError("establishment_time: series differ in length");
    Establishment e;
    for (double v : q)
        e.max_quotient = std::max(e.max_quotient, v);

    if (rule == EstablishmentRule::Threshold) {
        std::size_t i = q.size();
        while (i > 0 && q[i - 1] >= options.threshold)
            --i;
        if (i < q.size() && i + 1 < q.size()) {
            e.established = true;
            e.t_est = t[i];
            if (i > 0)
                e.t_est = t[i - 1] + (options.threshold - q[i - 1]) / (q[i] - q[i - 1]) * (t[i] - t[i - 1]);
        }
        return e;
    }

    const auto s = moving_average(q, options.smoothing);
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    const std::ptrdiff_t half = options.extremum_window / 2;
    struct Extremum {
        std::size_t index;
        bool maximum;
    };
    std::vector<Extremum> extrema;
    for (std::ptrdiff_t i = half; i + half < n; ++i) {
        bool is_max = true, is_min = true;
        for (std::ptrdiff_t j = i - half; j <= i + half; ++j) {
            if (j == i)
                continue;
            is_max = is_max && s[static_cast<std::size_t>(i)] > s[static_cast<std::size_t>(j)];
            is_min = is_min && s[static_cast<std::size_t>(i)] < s[static_cast<std::size_t>(j)];
        }
        if (!is_max && !is_min)
            continue;
        const bool maximum = is_max;
        if (!extrema.empty() && extrema.back().maximum == maximum)
            continue;
        extrema.push_back({static_cast<std::size_t>(i), maximum});
    }
    e.extrema_found = extrema.size();
    for (std::size_t k = 0; k + 1 < extrema.size(); ++k) {
        const std::size_t i = extrema[k].index;
        const std::size_t j = extrema[k + 1].index;
        const double mid = 0.5 * (s[i] + s[j]);
        if (std::abs(mid - 1.0) <= options.midpoint_tolerance) {
            e.established = true;
            e.t_est = 0.5 * (t[i] + t[j]);
            break;
        }
    }
    return e;
}

} // namespace onf::analysis
