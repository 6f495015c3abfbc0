#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "he11_oracle.hpp"
#include "onf/constants.hpp"
#include "onf/error.hpp"
#include "onf/waveguide/dielectric.hpp"
#include "onf/waveguide/dispersion.hpp"
#include "onf/waveguide/mode_profile.hpp"

using namespace onf;
using namespace onf::waveguide;

namespace {

const double omega0 = omega_from_wavelength(780.0 * nm);
const double a200 = 200.0 * nm;

// Frozen from the long-double beta-space bisection in he11_oracle.hpp.
constexpr double beta0_frozen = 8837303.6010943924;

FrequencyGrid grid_up_to(double top, std::size_t count)
{
    return {top / static_cast<double>(count), 1, count};
}

} // namespace

TEST_CASE("permittivity of both models")
{
    const auto c = DielectricModel::constant(silica_index);
    CHECK(permittivity(c, 1e15) == doctest::Approx(2.11237).epsilon(1e-5));
    CHECK(permittivity(c, 3e15) == permittivity(c, 1e14));

    const auto dl = DielectricModel::drude_lorentz(omega_350, 0.0, 1e16);
    CHECK(permittivity(dl, 1e-3) == doctest::Approx(1.0 + 1e32 / (omega_350 * omega_350)).epsilon(1e-14));

    const auto cal = DielectricModel::calibrated(omega0, silica_index);
    CHECK(std::abs(cal.permittivity(omega0) / (silica_index * silica_index) - 1.0) < 1e-9);
    CHECK(cal.guides(0.9 * omega_350));
    CHECK_FALSE(cal.guides(1.01 * omega_350));
}

TEST_CASE("plasma frequency calibration")
{
    const double n1 = silica_index;
    const double closed = std::sqrt((n1 * n1 - 1.0) * (omega_350 * omega_350 - omega0 * omega0));
    CHECK(calibrate_plasma_frequency(omega_350, 0.0, omega0, n1) == doctest::Approx(closed).epsilon(1e-14));

    const double gamma = dipole_damping_rate(omega_350);
    const double expected = 4.0 * fine_structure * bohr_radius * bohr_radius * std::pow(omega_350, 3)
                            / (3.0 * speed_of_light * speed_of_light);
    CHECK(gamma == doctest::Approx(expected).epsilon(1e-14));
    CHECK(gamma == doctest::Approx(4.7e7).epsilon(0.05));
    const double damped = calibrate_plasma_frequency(omega_350, gamma, omega0, n1);
    CHECK(std::abs(damped / closed - 1.0) < 1e-10);

    CHECK(calibrate_plasma_frequency(omega_350, 0.0, 1e-6, n1)
          == doctest::Approx(omega_350 * std::sqrt(n1 * n1 - 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(calibrate_plasma_frequency(omega_350, 0.0, 1.1 * omega_350, n1), NumericalError);
}

TEST_CASE("dispersion residual signs and single sign change")
{
    const auto m = DielectricModel::constant(silica_index);
    const double k2 = omega0 / speed_of_light;
    const double k1 = silica_index * k2;
    CHECK(dispersion_residual(m, a200, omega0, k2 * (1.0 + 1e-10)) < 0.0);
    CHECK(dispersion_residual(m, a200, omega0, k1 * (1.0 - 1e-10)) > 0.0);
    CHECK_THROWS_AS(dispersion_residual(m, a200, omega0, 0.5 * k2), DomainError);
    CHECK_THROWS_AS(dispersion_residual(m, a200, omega0, 1.01 * k1), DomainError);

    int changes = 0;
    double prev = 0.0;
    const int n = 20000;
    for (int i = 1; i < n; ++i) {
        const double beta = k2 + (k1 - k2) * i / n;
        const double f = dispersion_residual(m, a200, omega0, beta);
        const double g = static_cast<double>(oracle::he11_residual(silica_index, a200, omega0, beta));
        CHECK(std::signbit(f) == std::signbit(g));
        if (i > 1 && std::signbit(f) != std::signbit(prev))
            ++changes;
        prev = f;
    }
    CHECK(changes == 1);
}

TEST_CASE("solve_beta matches the bisection oracle")
{
    const auto m = DielectricModel::constant(silica_index);
    const auto root = solve_beta(m, a200, omega0);
    CHECK(std::abs(root.beta / beta0_frozen - 1.0) < 1e-12);
    for (double a_nm : {150.0, 250.0, 400.0}) {
        for (double w : {0.6 * omega0, omega0, 2.0 * omega0}) {
            const double ref = static_cast<double>(oracle::he11_beta(silica_index, a_nm * nm, w));
            CHECK(std::abs(solve_beta(m, a_nm * nm, w).beta / ref - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("solve_beta asymptotes")
{
    const auto m = DielectricModel::constant(silica_index);
    const double w_low = 0.05 * omega_350;
    CHECK(std::abs(solve_beta(m, a200, w_low).beta / (w_low / speed_of_light) - 1.0) < 0.01);
    const double w_high = 3.0 * omega_350;
    CHECK(std::abs(solve_beta(m, a200, w_high).beta / (silica_index * w_high / speed_of_light) - 1.0) < 0.02);
    const auto dl = DielectricModel::calibrated(omega0, silica_index);
    CHECK_THROWS_AS(solve_beta(dl, a200, 1.05 * omega_350), NumericalError);
}

TEST_CASE("dispersion table invariants")
{
    for (const auto& m : {DielectricModel::constant(silica_index), DielectricModel::calibrated(omega0, silica_index)}) {
        const auto t = build_dispersion_table(m, a200, grid_up_to(0.99 * omega_350, 800));
        REQUIRE(t.size() > 100);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double k2 = t.omega[i] / speed_of_light;
            CHECK(t.beta[i] > k2);
            CHECK(t.beta[i] < m.refractive_index(t.omega[i]) * k2);
            CHECK(t.v_g[i] == 1.0 / t.beta_prime[i]);
            CHECK(t.v_p[i] == t.omega[i] / t.beta[i]);
            if (i > 0)
                CHECK(t.beta[i] > t.beta[i - 1]);
        }
    }
}

TEST_CASE("low-frequency points are dropped with a warning")
{
    const auto m = DielectricModel::constant(silica_index);
    const auto t = build_dispersion_table(m, a200, grid_up_to(omega0, 2000));
    CHECK(t.grid.first > 1);
    REQUIRE_FALSE(t.warnings.empty());
    CHECK(t.warnings.front().find("dropped") != std::string::npos);
}

TEST_CASE("Drude-Lorentz table ends below the resonance")
{
    const auto m = DielectricModel::calibrated(omega0, silica_index);
    const auto t = build_dispersion_table(m, a200, grid_up_to(1.2 * omega_350, 1200));
    CHECK(t.omega.back() < omega_350);
    CHECK_FALSE(t.warnings.empty());
    // group velocity collapses toward the resonance
    CHECK(t.v_g.back() < 0.05 * speed_of_light);
}

TEST_CASE("constant model velocities approach c/n1")
{
    const auto m = DielectricModel::constant(silica_index);
    const auto t = build_dispersion_table(m, a200, grid_up_to(12.0 * omega_350, 4000));
    const double v_inf = speed_of_light / silica_index;
    CHECK(std::abs(t.v_g.back() / v_inf - 1.0) < 0.01);
    CHECK(std::abs(t.v_p.back() / v_inf - 1.0) < 0.01);
}

TEST_CASE("beta prime is converged on the working grid")
{
    const auto m = DielectricModel::constant(silica_index);
    const double dw = 2.0 * pi / (65536.0 * 0.05 * fs);
    const FrequencyGrid g{dw, 1, last_index_below(dw, 2.0 * omega0)};
    const auto t = build_dispersion_table(m, a200, g);
    CHECK(beta_prime_refinement_change(t, 0.5 * omega0, 1.5 * omega0) < 1e-6);
}

TEST_CASE("mode s parameter")
{
    const auto m = DielectricModel::constant(silica_index);
    for (double a_nm = 150.0; a_nm <= 400.0; a_nm += 50.0) {
        for (double f : {0.5, 1.0, 1.5, 2.0}) {
            const auto r = solve_beta(m, a_nm * nm, f * omega0);
            const double s = mode_s_parameter(r.beta, r.h, r.q, a_nm * nm);
            CHECK(s > -1.0);
            CHECK(s < 0.0);
            // scale invariance
            CHECK(mode_s_parameter(r.beta, r.h / 3.0, r.q / 3.0, 3.0 * a_nm * nm) == doctest::Approx(s).epsilon(1e-13));
        }
    }
    const auto r = solve_beta(m, a200, omega0);
    // frozen regression value
    CHECK(mode_s_parameter(r.beta, r.h, r.q, a200) == doctest::Approx(-0.883).epsilon(1e-3));
    CHECK_THROWS_AS(mode_s_parameter(r.beta, 0.0, r.q, a200), DomainError);
}

TEST_CASE("mode normalization against adaptive quadrature")
{
    const auto m = DielectricModel::constant(silica_index);
    const std::pair<double, double> cases[] = {
        {150.0, 1.0}, {200.0, 1.0}, {200.0, 0.6}, {300.0, 1.3}, {400.0, 0.8}};
    for (const auto& [a_nm, f] : cases) {
        const double a = a_nm * nm;
        const ModeProfile p(solve_beta(m, a, f * omega0), a);
        CHECK(p.normalization_integral() == doctest::Approx(1.0).epsilon(1e-12));
        // r = a u
        auto density = [&](double u, double n2) { return 2.0 * pi * a * a * u * n2 * p.field(a * u).norm_squared(); };
        boost::math::quadrature::tanh_sinh<double> inner;
        boost::math::quadrature::exp_sinh<double> outer;
        const double n2 = silica_index * silica_index;
        const double in = inner.integrate([&](double u) { return density(u, n2); }, 0.0, 1.0);
        const double out = outer.integrate([&](double u) { return density(1.0 + u, 1.0); });
        CHECK(std::abs(in + out - 1.0) < 1e-6);
    }
}

TEST_CASE("mode field continuity and decay")
{
    const auto m = DielectricModel::constant(silica_index);
    const ModeProfile p(solve_beta(m, a200, omega0), a200);
    const auto in = p.field(a200 * (1.0 - 1e-12));
    const auto out = p.field(a200 * (1.0 + 1e-12));
    CHECK(std::abs(in.e_z - out.e_z) < 1e-9 * std::abs(out.e_z));
    CHECK(std::abs(in.e_phi - out.e_phi) < 1e-9 * std::abs(out.e_phi));
    CHECK(std::abs(silica_index * silica_index * in.e_r - out.e_r) < 1e-9 * std::abs(out.e_r));

    double prev = std::abs(p.e_r(a200 * 1.0001));
    for (double r = 1.01; r < 5.0; r += 0.05) {
        const double v = std::abs(p.e_r(a200 * r));
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
    CHECK_THROWS_AS(p.e_r(a200), DomainError);
}

TEST_CASE("mode_e_r provenance")
{
    const auto m = DielectricModel::constant(silica_index);
    const auto t = build_dispersion_table(m, a200, grid_up_to(2.0 * omega0, 400));
    const auto modes = build_mode_table(t);
    const double r = a200 + 100.0 * nm;
    CHECK(mode_e_r(t.omega[10], r, t, modes) == modes.profiles[10].e_r(r));
    const double w = 0.5 * (t.omega[10] + t.omega[11]);
    CHECK(std::abs(mode_e_r(w, r, t, modes)) == doctest::Approx(std::abs(ModeProfile(solve_beta(m, a200, w), a200).e_r(r))));
    auto other = build_mode_table(build_dispersion_table(m, 250.0 * nm, grid_up_to(2.0 * omega0, 400)));
    CHECK_THROWS_AS(mode_e_r(t.omega[10], r, t, other), ConfigError);
}
