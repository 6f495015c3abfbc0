#pragma once

#include <complex>
#include <vector>

namespace onf::numeric {

// X_j = sum_k x_k exp(-2 pi i j k / N). Backed by FFTW (estimate planner, so
// results are reproducible run to run).
std::vector<std::complex<double>> dft_forward(const std::vector<std::complex<double>>& x);

} // namespace onf::numeric
