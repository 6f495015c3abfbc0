#include "onf/bath/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "onf/constants.hpp"
#include "onf/error.hpp"
#include "onf/numeric/interp.hpp"

namespace onf::bath {

using waveguide::DielectricKind;
using waveguide::DispersionTable;
using waveguide::ModeTable;

SpectralGrid one_point_spectral_density(const DispersionTable& table, const ModeTable& modes, double R,
                                        double gamma_target, double omega0, double cutoff_omega)
{
    if (modes.model_fingerprint != table.model.fingerprint() || modes.a != table.a
        || modes.profiles.size() != table.size())
        throw ConfigError("spectral density: dispersion table and mode table describe different fibers");
    if (!(R >= 0.0))
        throw ConfigError("spectral density: clearance R must be >= 0");
    if (!(gamma_target > 0.0))
        throw ConfigError("spectral density: coupling scale must be positive");
    if (cutoff_omega <= 0.0)
        cutoff_omega = table.omega.back();

    SpectralGrid g;
    g.d_omega = table.grid.d_omega;
    g.coupling_scale = gamma_target;
    g.clearance = R;
    g.model_fingerprint = table.model.fingerprint();
    g.a = table.a;

    const std::size_t last_row = [&] {
        std::size_t r = 0;
        while (r + 1 < table.size() && table.omega[r + 1] <= cutoff_omega)
            ++r;
        return r;
    }();
    g.cutoff_omega = std::min(cutoff_omega, table.omega.back());
    g.s_one.assign(table.grid.first + last_row + 1, 0.0);

    const double r = table.a + R;
    for (std::size_t i = 0; i <= last_row; ++i) {
        const double e_r = std::abs(modes.profiles[i].e_r(r));
        g.s_one[table.grid.first + i] = table.omega[i] * table.beta_prime[i] * e_r * e_r;
        g.max_beta_prime = std::max(g.max_beta_prime, table.beta_prime[i]);
    }

    if (!(omega0 > table.omega.front() && omega0 < g.cutoff_omega))
        throw DomainError("spectral density: omega0 outside the populated band");
    const double raw_at_omega0 = numeric::cubic_uniform(g.s_one, 0.0, g.d_omega, omega0);
    if (!(raw_at_omega0 > 0.0))
        throw NumericalError("spectral density vanishes at omega0");
    g.prefactor = gamma_target / (pi * raw_at_omega0);
    for (double& s : g.s_one)
        s *= g.prefactor;
    return g;
}

void two_point_integrand(SpectralGrid& g, const DispersionTable& table, double d)
{
    if (!(d >= 0.0))
        throw ConfigError("two-point integrand: separation must be >= 0");
    if (g.model_fingerprint != table.model.fingerprint() || g.a != table.a || g.d_omega != table.grid.d_omega)
        throw ConfigError("two-point integrand: spectral grid and dispersion table differ");
    g.separation = d;
    g.s_two.assign(g.size(), 0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.s_one[k] == 0.0)
            continue;
        const std::size_t row = table.row_of(k);
        g.s_two[k] = d == 0.0 ? g.s_one[k] : g.s_one[k] * std::cos(table.beta[row] * d);
    }
}

double markovian_rate(const SpectralGrid& g, double omega0)
{
    if (g.size() < 4 || !(omega0 > 0.0) || !(omega0 < g.omega(g.size() - 1)))
        throw DomainError("markovian_rate: omega0 outside the spectral grid");
    return pi * numeric::cubic_uniform(g.s_one, 0.0, g.d_omega, omega0);
}

double resolvable_limit(const DispersionTable& table, double d)
{
    double limit = table.omega.front();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table.grid.d_omega * table.beta_prime[i] * d > pi / 8.0)
            break;
        limit = table.omega[i];
    }
    return limit;
}

std::vector<CosineZero> cosine_zeros(const DispersionTable& table, double d, double omega_limit)
{
    std::vector<CosineZero> zeros;
    if (!(d > 0.0))
        return zeros;
    auto order_of = [&](double beta) { return static_cast<long>(std::floor(beta * d / pi - 0.5)); };
    for (std::size_t i = 0; i + 1 < table.size() && table.omega[i + 1] <= omega_limit; ++i) {
        const long lo = order_of(table.beta[i]);
        const long hi = order_of(table.beta[i + 1]);
        for (long k = lo + 1; k <= hi; ++k) {
            const double target = (static_cast<double>(k) + 0.5) * pi;
            double a = table.omega[i];
            double b = table.omega[i + 1];
            for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
                const double mid = 0.5 * (a + b);
                if (waveguide::solve_beta(table.model, table.a, mid).beta * d < target)
                    a = mid;
                else
                    b = mid;
            }
            zeros.push_back({0.5 * (a + b), k});
        }
    }
    return zeros;
}

CutoffChoice choose_cutoff(const DispersionTable& table, double d, const CutoffPolicy& policy,
                           const CutoffObservable& observable)
{
    CutoffChoice choice;
    if (table.model.kind() == DielectricKind::Constant) {
        choice.omega = table.omega.back();
        return choice;
    }
    if (!(d > 0.0))
        throw ConfigError("choose_cutoff: the Drude-Lorentz cutoff needs a positive separation");
    if (policy.zero_index < 0)
        throw ConfigError("choose_cutoff: zero index must be >= 0");

    const auto zeros = cosine_zeros(table, d, std::min(resolvable_limit(table, d), table.model.omega_R()));
    const auto idx = static_cast<std::size_t>(policy.zero_index);
    if (zeros.size() < idx + 1) {
        std::ostringstream msg;
        msg << "choose_cutoff: only " << zeros.size() << " resolvable zeros of cos(beta d) below omega_R for d = "
            << d << " m; extend the grid or reduce d";
        throw NumericalError(msg.str());
    }
    const std::size_t chosen = zeros.size() - 1 - idx;
    choice.omega = zeros[chosen].omega;
    choice.order = zeros[chosen].order;
    for (std::size_t j = chosen; j < zeros.size() && j <= chosen + 2; ++j) {
        choice.checked_omegas.push_back(zeros[j].omega);
        choice.observables.push_back(observable ? observable(zeros[j].omega) : 0.0);
    }
    const double base = choice.observables.front();
    for (std::size_t j = 1; j < choice.observables.size(); ++j) {
        const double scale = std::max(std::abs(base), std::abs(choice.observables[j]));
        if (scale > 0.0)
            choice.max_relative_change
                = std::max(choice.max_relative_change, std::abs(choice.observables[j] - base) / scale);
    }
    if (choice.max_relative_change >= policy.tolerance) {
        std::ostringstream msg;
        msg << "choose_cutoff: observable changes by " << choice.max_relative_change
            << " between successive zeros (tolerance " << policy.tolerance << ")";
        throw NumericalError(msg.str());
    }
    return choice;
}

} // namespace onf::bath
