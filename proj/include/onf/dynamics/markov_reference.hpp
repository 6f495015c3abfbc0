#pragma once

#include <cstddef>

#include "onf/dynamics/evolve.hpp"

namespace onf::dynamics {

// Piecewise exponential evolution for Dirac-delta kernels. Both atoms decay
// independently at amplitude rate gamma_M until `delay`; afterwards
// c_+ = (c1 + c2)/sqrt 2 decays at gamma_M + gamma_mn and c_- at
// gamma_M - gamma_mn (gamma_mn carries the sign of cos(beta d)).
// Times in s; samples t = 0, h, ..., steps h.
EvolutionResult markov_reference_evolution(double gamma_M, double gamma_mn, const InitialState& init, double delay,
                                           double h, std::size_t steps);

} // namespace onf::dynamics
