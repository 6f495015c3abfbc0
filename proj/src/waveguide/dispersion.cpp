#include "onf/waveguide/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "onf/constants.hpp"
#include "onf/error.hpp"
#include "onf/numeric/interp.hpp"

namespace onf::waveguide {

namespace {

constexpr double j11 = 3.8317059702075123; // first zero of J1
constexpr double bracket_margin = 1e-12;
constexpr double smallest_qa = 1e-300;

struct Bracket {
    double lo;
    double hi;
};

double core_index(const DielectricModel& model, double omega)
{
    const double n = model.refractive_index(omega);
    if (!(n > 1.0)) {
        std::ostringstream msg;
        msg << "no guided mode at omega = " << omega << " rad/s (core index " << n << " <= 1)";
        throw NumericalError(msg.str());
    }
    return n;
}

// HE11 lives at h a < j11; beyond that the J1 pole would be bracketed.
Bracket qa_bracket(double V)
{
    const double y_max = std::min(V, j11) * (1.0 - bracket_margin);
    return {V > j11 ? std::sqrt((V - y_max) * (V + y_max)) : smallest_qa, V * (1.0 - bracket_margin)};
}

double bisect_qa(double ka, double n, Bracket b)
{
    double f_lo = detail::residual_qa(b.lo, ka, n);
    const double f_hi = detail::residual_qa(b.hi, ka, n);
    // root below the smallest representable q a: beta equals omega/c in double
    if (b.lo == smallest_qa && f_lo >= 0.0 && f_hi > 0.0)
        return b.lo;
    if (!(f_lo < 0.0) || !(f_hi > 0.0)) {
        std::ostringstream msg;
        msg << "dispersion residual has no sign change in the HE11 bracket (ka = " << ka << ", n = " << n << ")";
        throw NumericalError(msg.str());
    }
    for (int it = 0; it < 400 && (b.hi - b.lo) > bracket_margin * b.hi; ++it) {
        // geometric midpoint while the bracket spans decades
        const double mid = b.hi > 4.0 * b.lo ? std::sqrt(b.lo) * std::sqrt(b.hi) : 0.5 * (b.lo + b.hi);
        const double f = detail::residual_qa(mid, ka, n);
        if (f < 0.0) {
            b.lo = mid;
            f_lo = f;
        } else {
            b.hi = mid;
        }
    }
    double x = 0.5 * (b.lo + b.hi);
    // Newton polish with a central-difference slope, kept only if it stays bracketed.
    const double step = 1e-6 * x;
    const double slope = (detail::residual_qa(x + step, ka, n) - detail::residual_qa(x - step, ka, n)) / (2.0 * step);
    if (std::isfinite(slope) && slope != 0.0) {
        const double fx = detail::residual_qa(x, ka, n);
        const double x_new = x - fx / slope;
        if (x_new > b.lo && x_new < b.hi && std::abs(detail::residual_qa(x_new, ka, n)) <= std::abs(fx))
            x = x_new;
    }
    return x;
}

} // namespace

double detail::residual_qa(double x, double ka, double n)
{
    const double n2 = n * n;
    const double V = ka * std::sqrt(n2 - 1.0);
    const double y = std::sqrt((V - x) * (V + x));
    const double P = (n2 + 1.0) / (2.0 * n2);
    const double M = (n2 - 1.0) / (2.0 * n2);

    const double K0 = std::cyl_bessel_k(0.0, x);
    const double K1 = std::cyl_bessel_k(1.0, x);
    const double d = K0 / (x * K1);        // -K1'/(x K1) - 1/x^2
    const double kt = 1.0 + x * K0 / K1;   // x^2 * (-K1'/(x K1))
    const double rb = std::sqrt(1.0 + (x / ka) * (x / ka)); // beta / k2
    const double gt = rb * (1.0 + (x / y) * (x / y));
    const double g_minus_k = 1.0 / (ka * ka * (rb + 1.0)) + rb / (y * y) - d;

    // R - P*kappa written as (R^2 - P^2 kappa^2) / (R + P kappa), scaled by x^2.
    const double num = g_minus_k * (gt + kt) / n2;
    const double den = std::sqrt(M * M * kt * kt + gt * gt / n2) + P * kt;

    return std::cyl_bessel_j(0.0, y) / (y * std::cyl_bessel_j(1.0, y)) - 1.0 / (y * y) + num / den;
}

double dispersion_residual(const DielectricModel& model, double a, double omega, double beta)
{
    const double n = core_index(model, omega);
    const double k2 = omega / speed_of_light;
    const double k1 = n * k2;
    if (!(beta > k2 && beta < k1))
        throw DomainError("dispersion_residual: beta outside (omega/c, n1 omega/c)");
    const double x = a * std::sqrt((beta - k2) * (beta + k2));
    return detail::residual_qa(x, k2 * a, n);
}

ModeRoot solve_beta(const DielectricModel& model, double a, double omega)
{
    if (!(omega > 0.0) || !(a > 0.0))
        throw DomainError("solve_beta: omega and a must be positive");
    const double n = core_index(model, omega);
    const double k2 = omega / speed_of_light;
    const double ka = k2 * a;
    const double V = ka * std::sqrt(n * n - 1.0);

    const double x = bisect_qa(ka, n, qa_bracket(V));
    const double y = std::sqrt((V - x) * (V + x));

    ModeRoot root;
    root.omega = omega;
    root.beta = k2 * std::sqrt(1.0 + (x / ka) * (x / ka));
    root.q = x / a;
    root.h = y / a;
    root.n1 = n;
    return root;
}

std::size_t DispersionTable::row_of(std::size_t grid_index) const
{
    if (grid_index < grid.first || grid_index >= grid.first + grid.count)
        return npos;
    return grid_index - grid.first;
}

double DispersionTable::interpolate(const std::vector<double>& column, double w) const
{
    if (empty() || w < omega.front() || w > omega.back())
        throw DomainError("dispersion table: omega outside the tabulated range");
    return numeric::cubic_uniform(column, omega.front(), grid.d_omega, w);
}

std::size_t last_index_below(double d_omega, double omega_limit)
{
    auto k = static_cast<std::size_t>(std::floor(omega_limit / d_omega));
    while (k > 0 && static_cast<double>(k) * d_omega >= omega_limit)
        --k;
    return k;
}

namespace {

std::vector<double> central_difference(const std::vector<double>& y, double dx)
{
    const std::size_t n = y.size();
    std::vector<double> d(n);
    if (n < 3) {
        if (n == 2)
            d[0] = d[1] = (y[1] - y[0]) / dx;
        return d;
    }
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dx);
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dx);
    d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * dx);
    return d;
}

} // namespace

DispersionTable build_dispersion_table(const DielectricModel& model, double a, const FrequencyGrid& grid)
{
    if (!(a > 0.0) || !(grid.d_omega > 0.0) || grid.count == 0)
        throw ConfigError("dispersion table: need a > 0 and a non-empty positive grid");

    DispersionTable t;
    t.model = model;
    t.a = a;

    std::size_t first_row = grid.count;
    std::size_t dropped_low = 0;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double w = grid.omega(i);
        if (w <= 0.0 || !model.guides(w)) {
            if (w <= 0.0) {
                ++dropped_low;
                continue;
            }
            std::ostringstream msg;
            msg << "truncated at omega = " << w << " rad/s: no guided mode (n1 <= 1) from here on";
            t.warnings.push_back(msg.str());
            break;
        }
        const ModeRoot root = solve_beta(model, a, w);
        const double k2 = w / speed_of_light;
        if (!(root.beta > k2 * (1.0 + bracket_margin))) {
            if (t.omega.empty()) {
                ++dropped_low;
                continue;
            }
            t.warnings.push_back("truncated: unresolvable root above the first resolved frequency");
            break;
        }
        if (t.omega.empty())
            first_row = i;
        t.omega.push_back(w);
        t.beta.push_back(root.beta);
    }
    if (dropped_low > 0 && !t.omega.empty()) {
        std::ostringstream msg;
        msg << "dropped " << dropped_low << " low-frequency points below omega = " << t.omega.front()
            << " rad/s (beta within 1e-12 of omega/c)";
        t.warnings.insert(t.warnings.begin(), msg.str());
    }
    if (t.omega.size() < 3)
        throw NumericalError("dispersion table: fewer than 3 guided grid points");

    t.grid = {grid.d_omega, grid.first + first_row, t.omega.size()};
    t.beta_prime = central_difference(t.beta, grid.d_omega);
    t.v_g.resize(t.size());
    t.v_p.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        t.v_g[i] = 1.0 / t.beta_prime[i];
        t.v_p[i] = t.omega[i] / t.beta[i];
    }
    return t;
}

double beta_prime_refinement_change(const DispersionTable& table, double omega_lo, double omega_hi)
{
    const double dw = table.grid.d_omega;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < table.size(); ++i) {
        const double w = table.omega[i];
        if (w < omega_lo || w > omega_hi)
            continue;
        const double up = solve_beta(table.model, table.a, w + 0.5 * dw).beta;
        const double down = solve_beta(table.model, table.a, w - 0.5 * dw).beta;
        const double fine = (up - down) / dw;
        worst = std::max(worst, std::abs(fine - table.beta_prime[i]) / std::abs(fine));
    }
    return worst;
}

} // namespace onf::waveguide
