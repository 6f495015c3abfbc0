#include "onf/waveguide/mode_profile.hpp"

#include <cmath>

#include "onf/constants.hpp"
#include "onf/error.hpp"

namespace onf::waveguide {

namespace {

using std::cyl_bessel_j;
using std::cyl_bessel_k;

double bessel_j(int nu, double x)
{
    if (nu < 0)
        return (nu % 2 == 0 ? 1.0 : -1.0) * cyl_bessel_j(static_cast<double>(-nu), x);
    return cyl_bessel_j(static_cast<double>(nu), x);
}

double bessel_k(int nu, double x)
{
    return cyl_bessel_k(static_cast<double>(std::abs(nu)), x);
}

// int_0^a r J_nu(h r)^2 dr
double inner_integral(int nu, double h, double a)
{
    const double y = h * a;
    return 0.5 * a * a * (bessel_j(nu, y) * bessel_j(nu, y) - bessel_j(nu - 1, y) * bessel_j(nu + 1, y));
}

// int_a^inf r K_nu(q r)^2 dr
double outer_integral(int nu, double q, double a)
{
    const double x = q * a;
    return 0.5 * a * a * (bessel_k(nu - 1, x) * bessel_k(nu + 1, x) - bessel_k(nu, x) * bessel_k(nu, x));
}

} // namespace

double mode_s_parameter(double beta, double h, double q, double a)
{
    (void)beta;
    if (!(h > 0.0) || !(q > 0.0))
        throw DomainError("mode_s_parameter: h and q must be positive");
    const double y = h * a;
    const double x = q * a;
    const double J0 = cyl_bessel_j(0.0, y);
    const double J1 = cyl_bessel_j(1.0, y);
    const double K0 = cyl_bessel_k(0.0, x);
    const double K1 = cyl_bessel_k(1.0, x);
    const double j_term = (J0 - J1 / y) / (y * J1);   // J1'(y) / (y J1(y))
    const double k_term = (-K0 - K1 / x) / (x * K1);  // K1'(x) / (x K1(x))
    const double den = j_term + k_term;
    if (den == 0.0 || !std::isfinite(den))
        throw NumericalError("mode_s_parameter: degenerate mode (vanishing denominator)");
    return (1.0 / (y * y) + 1.0 / (x * x)) / den;
}

ModeProfile::ModeProfile(const ModeRoot& root, double a) : root_(root), a_(a)
{
    s_ = mode_s_parameter(root.beta, root.h, root.q, a);
    const double integral = unnormalized_integral();
    if (!(integral > 0.0) || !std::isfinite(integral))
        throw NumericalError("mode normalization integral is not a positive finite number");
    amplitude_ = 1.0 / std::sqrt(integral);
}

FieldComponents ModeProfile::field(double r) const
{
    const double beta = root_.beta;
    const double h = root_.h;
    const double q = root_.q;
    const double A = amplitude_;
    const std::complex<double> i{0.0, 1.0};
    if (r < a_) {
        const double J0 = cyl_bessel_j(0.0, h * r);
        const double J1 = cyl_bessel_j(1.0, h * r);
        const double J2 = cyl_bessel_j(2.0, h * r);
        const double c = beta / (2.0 * h);
        return {i * A * c * ((1.0 - s_) * J0 - (1.0 + s_) * J2),
                -A * c * ((1.0 - s_) * J0 + (1.0 + s_) * J2),
                A * J1};
    }
    // K_n(q r) underflows double well before this point
    if (q * r > 700.0)
        return {};
    const double ratio = cyl_bessel_j(1.0, h * a_) / cyl_bessel_k(1.0, q * a_);
    const double K0 = cyl_bessel_k(0.0, q * r);
    const double K1 = cyl_bessel_k(1.0, q * r);
    const double K2 = cyl_bessel_k(2.0, q * r);
    const double c = beta / (2.0 * q) * ratio;
    return {i * A * c * ((1.0 - s_) * K0 + (1.0 + s_) * K2),
            -A * c * ((1.0 - s_) * K0 - (1.0 + s_) * K2),
            A * ratio * K1};
}

std::complex<double> ModeProfile::e_r(double r) const
{
    if (!(r > a_))
        throw DomainError("mode e_r is only evaluated outside the fiber (r > a)");
    return field(r).e_r;
}

double ModeProfile::unnormalized_integral() const
{
    const double beta = root_.beta;
    const double h = root_.h;
    const double q = root_.q;
    const double n2 = root_.n1 * root_.n1;
    const double sm = (1.0 - s_) * (1.0 - s_);
    const double sp = (1.0 + s_) * (1.0 + s_);

    const double inside = n2
        * (beta * beta / (2.0 * h * h) * (sm * inner_integral(0, h, a_) + sp * inner_integral(2, h, a_))
           + inner_integral(1, h, a_));
    const double ratio = cyl_bessel_j(1.0, h * a_) / cyl_bessel_k(1.0, q * a_);
    const double outside = ratio * ratio
        * (beta * beta / (2.0 * q * q) * (sm * outer_integral(0, q, a_) + sp * outer_integral(2, q, a_))
           + outer_integral(1, q, a_));
    return 2.0 * pi * (inside + outside);
}

double ModeProfile::normalization_integral() const
{
    return unnormalized_integral() * amplitude_ * amplitude_;
}

ModeTable build_mode_table(const DispersionTable& table)
{
    ModeTable modes;
    modes.model_fingerprint = table.model.fingerprint();
    modes.a = table.a;
    modes.grid = table.grid;
    modes.profiles.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double w = table.omega[i];
        const double beta = table.beta[i];
        const double n = table.model.refractive_index(w);
        const double k2 = w / speed_of_light;
        const double k1 = n * k2;
        ModeRoot root{w, beta, std::sqrt((k1 - beta) * (k1 + beta)), std::sqrt((beta - k2) * (beta + k2)), n};
        modes.profiles.emplace_back(root, table.a);
    }
    return modes;
}

std::complex<double> mode_e_r(double omega, double r, const DispersionTable& table, const ModeTable& modes)
{
    if (modes.model_fingerprint != table.model.fingerprint() || modes.a != table.a)
        throw ConfigError("mode table and dispersion table describe different fibers");
    if (table.empty() || omega < table.omega.front() || omega > table.omega.back())
        throw DomainError("mode_e_r: omega outside the tabulated range");
    const double u = omega / table.grid.d_omega;
    const double k = std::round(u);
    if (std::abs(u - k) < 1e-9) {
        const std::size_t row = table.row_of(static_cast<std::size_t>(k));
        if (row != DispersionTable::npos)
            return modes.profiles[row].e_r(r);
    }
    return ModeProfile(solve_beta(table.model, table.a, omega), table.a).e_r(r);
}

} // namespace onf::waveguide
