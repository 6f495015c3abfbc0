#include "onf/dynamics/markov_reference.hpp"

#include <algorithm>
#include <cmath>

#include "onf/error.hpp"

namespace onf::dynamics {

EvolutionResult markov_reference_evolution(double gamma_M, double gamma_mn, const InitialState& init, double delay,
                                           double h, std::size_t steps)
{
    if (!(delay >= 0.0))
        throw ConfigError("markov reference: delay must be >= 0");
    if (!(h > 0.0))
        throw ConfigError("markov reference: step must be positive");
    const double r2 = std::sqrt(2.0);
    const std::complex<double> plus0 = (init.c1 + init.c2) / r2;
    const std::complex<double> minus0 = (init.c1 - init.c2) / r2;

    EvolutionResult r;
    r.h = h;
    r.t.resize(steps + 1);
    r.c1.resize(steps + 1);
    r.c2.resize(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const double before = std::min(t, delay);
        const double after = std::max(t - delay, 0.0);
        const double common = std::exp(-gamma_M * before - gamma_M * after);
        const std::complex<double> cp = plus0 * common * std::exp(-gamma_mn * after);
        const std::complex<double> cm = minus0 * common * std::exp(gamma_mn * after);
        r.t[i] = t;
        r.c1[i] = (cp + cm) / r2;
        r.c2[i] = (cp - cm) / r2;
    }
    r.fill_populations();
    return r;
}

} // namespace onf::dynamics
