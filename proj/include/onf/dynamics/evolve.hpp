#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "onf/bath/correlation.hpp"

namespace onf::dynamics {

struct InitialState {
    std::complex<double> c1;
    std::complex<double> c2;

    static InitialState symmetric();
    static InitialState antisymmetric();
    static InitialState single();
    // "symmetric", "antisymmetric" or "single"
    static InitialState named(const std::string& name);
};

struct EvolutionResult {
    double h = 0.0; // s
    std::vector<double> t; // s
    std::vector<std::complex<double>> c1;
    std::vector<std::complex<double>> c2;
    std::vector<double> p1;
    std::vector<double> p2;
    std::vector<double> p_plus;  // |(c1 + c2)/sqrt 2|^2
    std::vector<double> p_minus; // |(c1 - c2)/sqrt 2|^2

    std::size_t size() const { return t.size(); }
    void fill_populations();
};

// Trapezoidal solution of  c_m' = -sum_n int_0^t F_mn(t - t') c_n(t') dt'
// for two identical atoms. f_mm and f_mn hold F(0), F(h), ... and must cover
// at least `steps` + 1 samples. Each step solves the real 4x4 system
//   (Id + (h/2)^2 F(0)) x_{n+1} = y_n
// for (Re c1, Im c1, Re c2, Im c2).
EvolutionResult evolve(std::span<const std::complex<double>> f_mm, std::span<const std::complex<double>> f_mn,
                       const InitialState& init, double h, std::size_t steps);

// Same on the grid of a pair of correlation functions, up to time T (s).
EvolutionResult evolve(const bath::CorrelationFunction& f_mm, const bath::CorrelationFunction& f_mn,
                       const InitialState& init, double T);

struct ConvergenceRecord {
    std::vector<double> h;            // step of every run, s
    std::vector<double> max_change;   // population change against the previous run
    bool converged = false;
};

// Kernels for refinement level k (step h0 / 2^k).
using KernelFactory = std::function<std::pair<bath::CorrelationFunction, bath::CorrelationFunction>(int level)>;

// Halves h until the max-norm change of P1 and P2 on the common grid drops
// below `tolerance`; returns the finest run. NumericalError after
// `max_halvings` unsuccessful halvings.
EvolutionResult convergence_check(const KernelFactory& kernels, const InitialState& init, double T,
                                  double tolerance = 1e-4, int max_halvings = 4,
                                  ConvergenceRecord* record = nullptr);

// Largest |P(coarse) - P(fine)| over the coarse grid for P1 and P2.
double population_difference(const EvolutionResult& coarse, const EvolutionResult& fine);

// CSV t_fs,re_c1,im_c1,re_c2,im_c2,P_plus,P_minus.
std::string evolution_csv(const EvolutionResult& r, std::string_view provenance);

} // namespace onf::dynamics
