#include "onf/dynamics/evolve.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "onf/constants.hpp"
#include "onf/error.hpp"
#include "onf/io/csv.hpp"

namespace onf::dynamics {

namespace {

using cplx = std::complex<double>;
using Mat4 = std::array<std::array<double, 4>, 4>;

Mat4 invert(Mat4 m)
{
    Mat4 inv{};
    for (int i = 0; i < 4; ++i)
        inv[i][i] = 1.0;
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col]))
                pivot = r;
        if (!(std::abs(m[pivot][col]) > 1e-300))
            throw NumericalError("evolve: singular step matrix; reduce h");
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double p = m[col][col];
        for (int j = 0; j < 4; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col)
                continue;
            const double f = m[r][col];
            for (int j = 0; j < 4; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    for (const auto& row : inv)
        for (double v : row)
            if (!std::isfinite(v))
                throw NumericalError("evolve: step matrix inverse overflows; reduce h");
    return inv;
}

// Id + q [[A,-B,C,-D],[B,A,D,C],[C,-D,A,-B],[D,C,B,A]] with F_mm = A + iB, F_mn = C + iD.
Mat4 step_matrix(cplx f_mm, cplx f_mn, double q)
{
    const double A = f_mm.real(), B = f_mm.imag(), C = f_mn.real(), D = f_mn.imag();
    Mat4 m = {{{A, -B, C, -D}, {B, A, D, C}, {C, -D, A, -B}, {D, C, B, A}}};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j)
            m[i][j] *= q;
        m[i][i] += 1.0;
    }
    return m;
}

} // namespace

InitialState InitialState::symmetric() { return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}; }
InitialState InitialState::antisymmetric() { return {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}; }
InitialState InitialState::single() { return {1.0, 0.0}; }

InitialState InitialState::named(const std::string& name)
{
    if (name == "symmetric")
        return symmetric();
    if (name == "antisymmetric")
        return antisymmetric();
    if (name == "single")
        return single();
    throw ConfigError("unknown initial state '" + name + "' (symmetric, antisymmetric, single)");
}

void EvolutionResult::fill_populations()
{
    const std::size_t n = t.size();
    p1.resize(n);
    p2.resize(n);
    p_plus.resize(n);
    p_minus.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p1[i] = std::norm(c1[i]);
        p2[i] = std::norm(c2[i]);
        p_plus[i] = 0.5 * std::norm(c1[i] + c2[i]);
        p_minus[i] = 0.5 * std::norm(c1[i] - c2[i]);
    }
}

EvolutionResult evolve(std::span<const cplx> f_mm, std::span<const cplx> f_mn, const InitialState& init, double h,
                       std::size_t steps)
{
    if (!(h > 0.0))
        throw ConfigError("evolve: step must be positive");
    if (f_mm.size() < steps + 1 || f_mn.size() < steps + 1)
        throw ConfigError("evolve: kernels do not cover the requested time span");
    if (std::norm(init.c1) + std::norm(init.c2) > 1.0 + 1e-12)
        throw ConfigError("evolve: initial state has norm above one");

    const double q = 0.25 * h * h;
    const Mat4 minv = invert(step_matrix(f_mm[0], f_mn[0], q));

    // History kernel G_k = F_k + F_{k+1} in the (c1 + c2, c1 - c2) basis.
    std::vector<double> gpr(steps), gpi(steps), gmr(steps), gmi(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        const cplx gp = f_mm[k] + f_mm[k + 1] + f_mn[k] + f_mn[k + 1];
        const cplx gm = f_mm[k] + f_mm[k + 1] - f_mn[k] - f_mn[k + 1];
        gpr[k] = gp.real();
        gpi[k] = gp.imag();
        gmr[k] = gm.real();
        gmi[k] = gm.imag();
    }
    std::vector<double> spr(steps + 1), spi(steps + 1), smr(steps + 1), smi(steps + 1);

    EvolutionResult r;
    r.h = h;
    r.t.resize(steps + 1);
    r.c1.resize(steps + 1);
    r.c2.resize(steps + 1);
    r.c1[0] = init.c1;
    r.c2[0] = init.c2;

    auto apply = [&](std::size_t k, cplx x1, cplx x2) {
        return std::pair{f_mm[k] * x1 + f_mn[k] * x2, f_mn[k] * x1 + f_mm[k] * x2};
    };

    for (std::size_t n = 0; n < steps; ++n) {
        const cplx s = r.c1[n] + r.c2[n];
        const cplx d = r.c1[n] - r.c2[n];
        spr[n] = s.real();
        spi[n] = s.imag();
        smr[n] = d.real();
        smi[n] = d.imag();

        cplx y1, y2;
        if (n == 0) {
            const auto [a1, a2] = apply(1, r.c1[0], r.c2[0]);
            y1 = r.c1[0] - q * a1;
            y2 = r.c2[0] - q * a2;
        } else {
            double hpr = 0.0, hpi = 0.0, hmr = 0.0, hmi = 0.0;
            for (std::size_t l = 1; l < n; ++l) {
                const std::size_t k = n - l;
                hpr += gpr[k] * spr[l] - gpi[k] * spi[l];
                hpi += gpr[k] * spi[l] + gpi[k] * spr[l];
                hmr += gmr[k] * smr[l] - gmi[k] * smi[l];
                hmi += gmr[k] * smi[l] + gmi[k] * smr[l];
            }
            const cplx hist1 = 0.5 * (cplx(hpr, hpi) + cplx(hmr, hmi));
            const cplx hist2 = 0.5 * (cplx(hpr, hpi) - cplx(hmr, hmi));
            const auto [n0a, n0b] = apply(0, r.c1[n], r.c2[n]);
            const auto [n1a, n1b] = apply(1, r.c1[n], r.c2[n]);
            const auto [z0a, z0b] = apply(n, r.c1[0], r.c2[0]);
            const auto [z1a, z1b] = apply(n + 1, r.c1[0], r.c2[0]);
            y1 = r.c1[n] - q * (2.0 * n1a + n0a + 2.0 * hist1 + z0a + z1a);
            y2 = r.c2[n] - q * (2.0 * n1b + n0b + 2.0 * hist2 + z0b + z1b);
        }

        const std::array<double, 4> y = {y1.real(), y1.imag(), y2.real(), y2.imag()};
        std::array<double, 4> x{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                x[i] += minv[i][j] * y[j];
        r.c1[n + 1] = {x[0], x[1]};
        r.c2[n + 1] = {x[2], x[3]};
    }
    for (std::size_t i = 0; i <= steps; ++i)
        r.t[i] = static_cast<double>(i) * h;
    r.fill_populations();
    return r;
}

EvolutionResult evolve(const bath::CorrelationFunction& f_mm, const bath::CorrelationFunction& f_mn,
                       const InitialState& init, double T)
{
    if (f_mm.dt != f_mn.dt)
        throw ConfigError("evolve: F_mm and F_mn are sampled on different grids");
    if (!(T > 0.0))
        throw ConfigError("evolve: final time must be positive");
    const auto steps = static_cast<std::size_t>(std::llround(T / f_mm.dt));
    return evolve(f_mm.nonnegative(), f_mn.nonnegative(), init, f_mm.dt, steps);
}

double population_difference(const EvolutionResult& coarse, const EvolutionResult& fine)
{
    const double ratio = coarse.h / fine.h;
    const auto stride = static_cast<std::size_t>(std::llround(ratio));
    if (stride == 0 || std::abs(ratio - static_cast<double>(stride)) > 1e-9 * ratio)
        throw ConfigError("population_difference: steps are not commensurate");
    double worst = 0.0;
    for (std::size_t i = 0; i < coarse.size() && i * stride < fine.size(); ++i) {
        worst = std::max(worst, std::abs(coarse.p1[i] - fine.p1[i * stride]));
        worst = std::max(worst, std::abs(coarse.p2[i] - fine.p2[i * stride]));
    }
    return worst;
}

EvolutionResult convergence_check(const KernelFactory& kernels, const InitialState& init, double T,
                                  double tolerance, int max_halvings, ConvergenceRecord* record)
{
    ConvergenceRecord rec;
    auto run = [&](int level) {
        const auto [mm, mn] = kernels(level);
        return evolve(mm, mn, init, T);
    };
    EvolutionResult prev = run(0);
    rec.h.push_back(prev.h);
    for (int level = 1; level <= max_halvings; ++level) {
        EvolutionResult next = run(level);
        const double change = population_difference(prev, next);
        rec.h.push_back(next.h);
        rec.max_change.push_back(change);
        prev = std::move(next);
        if (change < tolerance) {
            rec.converged = true;
            break;
        }
    }
    if (record)
        *record = rec;
    if (!rec.converged) {
        std::ostringstream msg;
        msg << "evolve: populations not converged after " << max_halvings << " halvings; changes:";
        for (double c : rec.max_change)
            msg << ' ' << c;
        throw NumericalError(msg.str());
    }
    return prev;
}

std::string evolution_csv(const EvolutionResult& r, std::string_view provenance)
{
    const std::size_t n = r.size();
    std::vector<double> t(n), re1(n), im1(n), re2(n), im2(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = r.t[i] / fs;
        re1[i] = r.c1[i].real();
        im1[i] = r.c1[i].imag();
        re2[i] = r.c2[i].real();
        im2[i] = r.c2[i].imag();
    }
    return io::csv_document(provenance, {"t_fs", "re_c1", "im_c1", "re_c2", "im_c2", "P_plus", "P_minus"},
                            {&t, &re1, &im1, &re2, &im2, &r.p_plus, &r.p_minus});
}

} // namespace onf::dynamics
