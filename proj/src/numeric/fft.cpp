#include "onf/numeric/fft.hpp"

#include <cstring>
#include <memory>
#include <mutex>

#include <fftw3.h>

namespace onf::numeric {

namespace {

std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const { fftw_free(p); }
};

} // namespace

std::vector<std::complex<double>> dft_forward(const std::vector<std::complex<double>>& x)
{
    const int n = static_cast<int>(x.size());
    if (n == 0)
        return {};
    std::unique_ptr<fftw_complex, FftwFree> in(fftw_alloc_complex(x.size()));
    std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(x.size()));
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(n, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    std::memcpy(in.get(), x.data(), x.size() * sizeof(fftw_complex));
    fftw_execute(plan);
    std::vector<std::complex<double>> result(x.size());
    std::memcpy(static_cast<void*>(result.data()), out.get(), x.size() * sizeof(fftw_complex));
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return result;
}

} // namespace onf::numeric
