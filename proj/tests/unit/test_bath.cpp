#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "onf/error.hpp"

using namespace onf;
using namespace onf::bath;
using fixture::omega0;

TEST_CASE("one-point spectral density")
{
    const auto& f = fixture::constant_fiber();
    const auto g = fixture::spectrum(f, 0.0);
    for (double s : g.s_one)
        CHECK(s >= 0.0);
    CHECK(markovian_rate(g, omega0) == doctest::Approx(fixture::gamma_target).epsilon(1e-12));

    auto doubled = one_point_spectral_density(f.table, f.modes, fixture::R100, 2.0 * fixture::gamma_target, omega0);
    for (std::size_t k = 0; k < g.size(); ++k)
        CHECK(doubled.s_one[k] == doctest::Approx(2.0 * g.s_one[k]).epsilon(1e-13));
    CHECK(markovian_rate(doubled, omega0) == doctest::Approx(2.0 * markovian_rate(g, omega0)).epsilon(1e-13));
    CHECK_THROWS_AS(markovian_rate(g, 1e18), DomainError);

    const auto& other = fixture::dl_fiber();
    CHECK_THROWS_AS(one_point_spectral_density(f.table, other.modes, fixture::R100, 1.0, omega0), ConfigError);
}

TEST_CASE("Drude-Lorentz spectral density cuts off below the resonance")
{
    const auto& f = fixture::dl_fiber();
    const auto g = fixture::spectrum(f, 0.0);
    const std::size_t last = g.size() - 1;
    const std::size_t k0 = static_cast<std::size_t>(omega0 / g.d_omega);
    CHECK(g.omega(last) < omega_350);
    // density of states diverges while the evanescent field at a + R collapses
    CHECK(f.table.beta_prime.back() > 10.0 * f.table.interpolate(f.table.beta_prime, omega0));
    CHECK(g.s_one[last] < 1e-6 * g.s_one[k0]);
}

TEST_CASE("two-point integrand")
{
    const auto& f = fixture::constant_fiber();
    const auto g0 = fixture::spectrum(f, 0.0);
    CHECK(g0.s_two == g0.s_one);

    const double d = 780.0 * nm;
    const auto g = fixture::spectrum(f, d);
    for (std::size_t k = 0; k < g.size(); ++k)
        CHECK(std::abs(g.s_two[k]) <= g.s_one[k]);

    // every sign flip of S_two brackets exactly one zero of cos(beta d)
    const auto zeros = cosine_zeros(f.table, d, f.table.omega.back());
    std::size_t flips = 0, z = 0;
    for (std::size_t k = f.table.grid.first; k + 1 < g.size(); ++k) {
        if (std::signbit(g.s_two[k]) == std::signbit(g.s_two[k + 1]) || g.s_one[k] == 0.0)
            continue;
        ++flips;
        REQUIRE(z < zeros.size());
        CHECK(zeros[z].omega > g.omega(k));
        CHECK(zeros[z].omega < g.omega(k + 1));
        ++z;
    }
    CHECK(flips == zeros.size());
    for (const auto& zero : zeros) {
        const double beta = waveguide::solve_beta(f.table.model, f.table.a, zero.omega).beta;
        CHECK(std::abs(beta * d - (static_cast<double>(zero.order) + 0.5) * pi) < 1e-9);
    }
}

TEST_CASE("cutoff selection")
{
    const auto& c = fixture::constant_fiber();
    const auto choice = choose_cutoff(c.table, 780.0 * nm, {}, nullptr);
    CHECK(choice.omega == c.table.omega.back());

    const auto& f = fixture::dl_fiber();
    const double d = 780.0 * nm;
    const auto dl = choose_cutoff(f.table, d, {}, [](double) { return 1.0; });
    CHECK(dl.omega < omega_350);
    const double beta = waveguide::solve_beta(f.table.model, f.table.a, dl.omega).beta;
    CHECK(std::abs(std::cos(beta * d)) < 1e-9);
    REQUIRE(dl.checked_omegas.size() == 3);
    CHECK(dl.checked_omegas[0] < dl.checked_omegas[1]);
    CHECK(dl.checked_omegas[1] < dl.checked_omegas[2]);
    const auto zeros = cosine_zeros(f.table, d, resolvable_limit(f.table, d));
    CHECK(dl.omega == zeros[zeros.size() - 3].omega);

    // an observable that keeps changing is rejected
    CHECK_THROWS_AS(choose_cutoff(f.table, d, {}, [](double w) { return w; }), NumericalError);
    // too few zeros below the resonance
    CHECK_THROWS_AS(choose_cutoff(f.table, 1.0 * nm, {}, [](double) { return 1.0; }), NumericalError);
}

TEST_CASE("correlation function basics")
{
    const auto& f = fixture::constant_fiber();
    const auto g = fixture::spectrum(f, 0.0);
    const auto mm = correlation_function(g, CorrelationKind::OnePoint, omega0, 65536);
    const auto mn = correlation_function(g, CorrelationKind::TwoPoint, omega0, 65536);
    CHECK(mm.samples == mn.samples);
    CHECK(mm.dt == doctest::Approx(0.05 * fs).epsilon(1e-12));
    CHECK(mm.dt == 2.0 * pi / (65536.0 * g.d_omega));
    CHECK(mm.nonnegative()[0].real() > 0.0);
    CHECK(mm.time(mm.zero_index) == 0.0);

    double peak = 0.0;
    for (const auto& s : mm.samples)
        peak = std::max(peak, std::abs(s));
    for (std::size_t m = 1; m < mm.zero_index; ++m) {
        const auto plus = mm.samples[mm.zero_index + m];
        const auto minus = mm.samples[mm.zero_index - m];
        CHECK(std::abs(minus - std::conj(plus)) < 1e-10 * peak);
    }

    CHECK_THROWS_AS(correlation_function(g, CorrelationKind::OnePoint, omega0, 1000), ConfigError);
    CHECK_THROWS_AS(correlation_function(g, CorrelationKind::OnePoint, omega0, 1024), ConfigError);
}

TEST_CASE("Plancherel identity")
{
    const auto& f = fixture::constant_fiber();
    const auto g = fixture::spectrum(f, 780.0 * nm);
    for (auto kind : {CorrelationKind::OnePoint, CorrelationKind::TwoPoint}) {
        const auto c = correlation_function(g, kind, omega0, 65536);
        double lhs = 0.0;
        for (const auto& s : c.samples)
            lhs += std::norm(s);
        lhs *= c.dt;
        double rhs = 0.0;
        for (double w : weighted_integrand(g, kind))
            rhs += w * w;
        rhs *= 2.0 * pi * g.d_omega;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    }
}

TEST_CASE("Nyquist refusal")
{
    const auto& f = fixture::constant_fiber();
    const auto g = fixture::spectrum(f, 200e-6);
    CHECK(required_d_omega(g) < g.d_omega);
    try {
        correlation_function(g, CorrelationKind::TwoPoint, omega0, 65536);
        FAIL("expected a Nyquist refusal");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("need d_omega") != std::string::npos);
    }
    CHECK_NOTHROW(correlation_function(g, CorrelationKind::OnePoint, omega0, 65536));
}

TEST_CASE("grid refinement stability")
{
    // halving d_omega at fixed dt doubles the window; compare on the common part
    const auto m = waveguide::DielectricModel::constant(silica_index);
    const auto coarse = fixture::make_fiber(m, 10.0 * omega0, 65536);
    const auto fine = fixture::make_fiber(m, 10.0 * omega0, 131072);
    const double d = 780.0 * nm;
    for (auto kind : {CorrelationKind::OnePoint, CorrelationKind::TwoPoint}) {
        const auto a = correlation_function(fixture::spectrum(coarse, d), kind, omega0, 65536);
        const auto b = correlation_function(fixture::spectrum(fine, d), kind, omega0, 131072);
        REQUIRE(a.dt == doctest::Approx(b.dt).epsilon(1e-14));
        double diff = 0.0, norm = 0.0;
        const std::size_t half = a.zero_index / 2;
        for (std::size_t m2 = a.zero_index - half; m2 < a.zero_index + half; ++m2) {
            const auto x = a.samples[m2];
            const auto y = b.samples[m2 - a.zero_index + b.zero_index];
            diff += std::norm(x - y);
            norm += std::norm(y);
        }
        CHECK(std::sqrt(diff / norm) < 1e-4);
    }
}

TEST_CASE("peak diagnostics")
{
    CorrelationFunction c;
    c.dt = 0.01 * fs;
    c.samples.resize(4096);
    c.zero_index = 2048;
    const double sigma = 1.0 * fs;
    for (std::size_t m = 0; m < c.samples.size(); ++m) {
        const double t = c.time(m);
        c.samples[m] = std::exp(-t * t / (2.0 * sigma * sigma));
    }
    const auto p = peak_diagnostics(c);
    CHECK(p.peak_time == 0.0);
    CHECK(std::abs(p.fwhm - 2.0 * std::sqrt(2.0 * std::log(2.0)) * sigma) < c.dt);
    CHECK_FALSE(p.has_pair);

    c.kind = CorrelationKind::TwoPoint;
    c.separation = 1e-6;
    const double t0 = 5.0 * fs;
    for (std::size_t m = 0; m < c.samples.size(); ++m) {
        const double t = c.time(m);
        c.samples[m] = std::exp(-(t - t0) * (t - t0) / (2.0 * sigma * sigma))
                       + 0.8 * std::exp(-(t + t0) * (t + t0) / (2.0 * sigma * sigma));
    }
    const auto q = peak_diagnostics(c);
    REQUIRE(q.has_pair);
    CHECK(q.separation == doctest::Approx(2.0 * t0).epsilon(1e-9));
}
