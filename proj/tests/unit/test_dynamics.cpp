#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "onf/analysis/fits.hpp"
#include "onf/dynamics/evolve.hpp"
#include "onf/dynamics/markov_reference.hpp"
#include "onf/error.hpp"

using namespace onf;
using namespace onf::dynamics;
using cplx = std::complex<double>;

namespace {

const double h = 0.05 * fs;
const double gamma_M = 0.5e12;

std::vector<cplx> delta_kernel(std::size_t n, double rate, std::size_t at = 0)
{
    std::vector<cplx> f(n, 0.0);
    f[at] = at == 0 ? 2.0 * rate / h : rate / h;
    return f;
}

struct Kernels {
    bath::CorrelationFunction mm, mn;
};

const Kernels& constant_kernels()
{
    static const Kernels k = [] {
        const auto g = fixture::spectrum(fixture::constant_fiber(), 2.0 * pi / 8837303.6010943924);
        return Kernels{bath::correlation_function(g, bath::CorrelationKind::OnePoint, fixture::omega0, 65536),
                       bath::correlation_function(g, bath::CorrelationKind::TwoPoint, fixture::omega0, 65536)};
    }();
    return k;
}

} // namespace

TEST_CASE("zero kernel leaves the amplitudes unchanged")
{
    const std::vector<cplx> zero(2001, 0.0);
    const InitialState init{cplx(0.6, 0.1), cplx(-0.3, 0.5)};
    const auto r = evolve(zero, zero, init, h, 2000);
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r.c1[i] == init.c1);
        CHECK(r.c2[i] == init.c2);
    }
    CHECK(r.t.back() == doctest::Approx(100.0 * fs));
}

TEST_CASE("named initial states")
{
    CHECK(std::norm(InitialState::symmetric().c1) == doctest::Approx(0.5));
    CHECK(InitialState::antisymmetric().c2 == -InitialState::antisymmetric().c1);
    CHECK(InitialState::single().c2 == cplx(0.0));
    CHECK(InitialState::named("symmetric").c1 == InitialState::symmetric().c1);
    CHECK_THROWS_AS(InitialState::named("bell"), ConfigError);
}

TEST_CASE("input validation")
{
    const std::vector<cplx> k(100, 0.0);
    CHECK_THROWS_AS(evolve(k, k, InitialState::single(), h, 100), ConfigError);
    CHECK_THROWS_AS(evolve(k, k, InitialState{1.0, 1.0}, h, 10), ConfigError);
    std::vector<cplx> singular(100, 0.0);
    singular[0] = -4.0 / (h * h);
    CHECK_THROWS_AS(evolve(singular, k, InitialState::single(), h, 10), NumericalError);

    auto mm = constant_kernels().mm;
    auto mn = constant_kernels().mn;
    mn.dt *= 2.0;
    CHECK_THROWS_AS(evolve(mm, mn, InitialState::single(), 100.0 * fs), ConfigError);
}

TEST_CASE("numerical delta kernel matches the Markov reference")
{
    const std::size_t steps = 20000;
    const auto mm = delta_kernel(steps + 1, gamma_M);
    const std::vector<cplx> mn(steps + 1, 0.0);
    const auto r = evolve(mm, mn, InitialState::single(), h, steps);
    const auto ref = markov_reference_evolution(gamma_M, 0.0, InitialState::single(), 0.0, h, steps);
    for (std::size_t i = 10; i <= steps; ++i)
        CHECK(std::abs(r.p1[i] / ref.p1[i] - 1.0) < 0.01);
}

TEST_CASE("displaced delta kernels freeze the antisymmetric state after the delay")
{
    const std::size_t steps = 20000;
    const std::size_t lag = 80; // 4 fs
    const double tau = static_cast<double>(lag) * h;
    const auto mm = delta_kernel(steps + 1, gamma_M);
    const auto mn = delta_kernel(steps + 1, gamma_M, lag);
    const auto r = evolve(mm, mn, InitialState::antisymmetric(), h, steps);
    // delay-differential plateau c(0) / (1 + gamma tau), here with gamma_mn = gamma_M
    const double plateau = 1.0 / ((1.0 + gamma_M * tau) * (1.0 + gamma_M * tau));
    for (std::size_t i = 4 * lag; i <= steps; i += 100)
        CHECK(r.p_minus[i] == doctest::Approx(plateau).epsilon(1e-3));
    // before the delay both atoms decay independently
    CHECK(r.p_minus[lag / 2] == doctest::Approx(std::exp(-2.0 * gamma_M * tau / 2.0)).epsilon(1e-4));
}

TEST_CASE("Markov reference")
{
    const std::size_t steps = 1000;
    const auto sup = markov_reference_evolution(gamma_M, gamma_M, InitialState::symmetric(), 0.0, h, steps);
    CHECK(sup.p_plus.back() == doctest::Approx(std::exp(-4.0 * gamma_M * sup.t.back())).epsilon(1e-12));
    const auto sub = markov_reference_evolution(gamma_M, gamma_M, InitialState::antisymmetric(), 0.0, h, steps);
    CHECK(sub.p_minus.back() == doctest::Approx(1.0).epsilon(1e-12));

    // kink in ln P exactly at the delay
    const std::size_t lag = 300;
    const auto k = markov_reference_evolution(gamma_M, gamma_M, InitialState::antisymmetric(), lag * h, h, steps);
    const double before = std::log(k.p_minus[lag]) - std::log(k.p_minus[lag - 1]);
    const double after = std::log(k.p_minus[lag + 1]) - std::log(k.p_minus[lag]);
    CHECK(before == doctest::Approx(-2.0 * gamma_M * h).epsilon(1e-9));
    CHECK(std::abs(after) < 1e-15);
    CHECK_THROWS_AS(markov_reference_evolution(gamma_M, 0.0, InitialState::single(), -1.0, h, 10), ConfigError);
}

TEST_CASE("constant-model single atom decays at 2 pi S(omega0)")
{
    const auto& k = constant_kernels();
    auto mn = k.mn;
    std::fill(mn.samples.begin(), mn.samples.end(), cplx(0.0));
    const auto r = evolve(k.mm, mn, InitialState::single(), 1000.0 * fs);
    const auto fit = analysis::fit_decay_rate(r.t, r.p1, 300.0 * fs);
    CHECK(std::abs(fit.rate / (2.0 * fixture::gamma_target) - 1.0) < 0.02);
    for (std::size_t i = 0; i < r.size(); ++i)
        CHECK(r.p2[i] == 0.0);
}

TEST_CASE("symmetry, linearity and parity")
{
    const auto& k = constant_kernels();
    const double T = 200.0 * fs;
    const auto sym = evolve(k.mm, k.mn, InitialState::symmetric(), T);
    for (std::size_t i = 0; i < sym.size(); ++i)
        CHECK(std::abs(sym.c1[i] - sym.c2[i]) < 1e-10);

    const InitialState a{cplx(0.3, 0.2), cplx(0.5, -0.4)};
    const cplx alpha(0.7, -0.9);
    const InitialState scaled{alpha * a.c1, alpha * a.c2};
    const InitialState swapped{a.c2, a.c1};
    const auto ra = evolve(k.mm, k.mn, a, T);
    const auto rs = evolve(k.mm, k.mn, scaled, T);
    const auto rw = evolve(k.mm, k.mn, swapped, T);
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(std::abs(rs.c1[i] - alpha * ra.c1[i]) < 1e-12);
        CHECK(std::abs(rs.c2[i] - alpha * ra.c2[i]) < 1e-12);
        CHECK(std::abs(rw.c1[i] - ra.c2[i]) < 1e-12);
        CHECK(std::abs(rw.c2[i] - ra.c1[i]) < 1e-12);
    }
}

TEST_CASE("total population does not grow")
{
    const auto& k = constant_kernels();
    const auto r = evolve(k.mm, k.mn, InitialState::single(), 1000.0 * fs);
    const auto width = static_cast<std::size_t>(10.0 * fs / r.h);
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double prev = r.p1[i - 1] + r.p2[i - 1];
        const double now = r.p1[i] + r.p2[i];
        CHECK(now <= 1.0 + 1e-6);
        if (i > width)
            CHECK(now <= prev + 1e-12);
        else
            CHECK(now <= prev + 1e-3);
    }
}

TEST_CASE("convergence check")
{
    const std::vector<cplx> zero(1 << 14, 0.0);
    bath::CorrelationFunction z;
    z.dt = h;
    z.samples = zero;
    z.zero_index = zero.size() / 2;
    ConvergenceRecord rec;
    const auto r = convergence_check(
        [&](int level) {
            auto c = z;
            c.dt = h / std::pow(2.0, level);
            c.samples.assign(zero.size() << level, cplx(0.0));
            c.zero_index = c.samples.size() / 2;
            return std::pair{c, c};
        },
        InitialState::symmetric(), 100.0 * fs, 1e-4, 4, &rec);
    CHECK(rec.converged);
    REQUIRE(rec.max_change.size() == 1);
    CHECK(rec.max_change[0] == 0.0);
    CHECK(r.h == h / 2.0);

    // a kernel whose strength grows with refinement never settles
    CHECK_THROWS_AS(convergence_check(
                        [&](int level) {
                            auto c = z;
                            c.dt = h / std::pow(2.0, level);
                            c.samples.assign(zero.size() << level, cplx(0.0));
                            c.zero_index = c.samples.size() / 2;
                            c.samples[c.zero_index] = 1e12 * (level + 1) / c.dt;
                            return std::pair{c, c};
                        },
                        InitialState::single(), 100.0 * fs, 1e-4, 2),
                    NumericalError);
}
