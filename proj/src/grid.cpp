#include "qhmhd/grid.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qhmhd {

TorusGrid::TorusGrid(int n) : n_(n) {
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("TorusGrid: n must be even and >= 8, got " + std::to_string(n));
}

namespace fft {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plan creation is not thread safe in FFTW; executing a cached plan on fresh
// arrays (fftw_execute_dft) is.
std::mutex g_plan_mutex;

PlanPair& plans_for(int n) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const std::size_t m = static_cast<std::size_t>(n) * n;
    fftw_complex* a = fftw_alloc_complex(m);
    fftw_complex* b = fftw_alloc_complex(m);
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, FFTW_MEASURE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, FFTW_MEASURE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fft: plan creation failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

void forward(const TorusGrid& grid, const double* phys, std::complex<double>* coeffs) {
    const int n = grid.size();
    const std::size_t m = grid.points();
    std::vector<std::complex<double>> in(m);
    for (std::size_t i = 0; i < m; ++i) in[i] = phys[i];
    PlanPair& p = plans_for(n);
    fftw_execute_dft(p.fwd, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(coeffs));
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) coeffs[i] *= scale;
}

void inverse(const TorusGrid& grid, const std::complex<double>* coeffs, double* phys) {
    const int n = grid.size();
    const std::size_t m = grid.points();
    std::vector<std::complex<double>> out(m);
    PlanPair& p = plans_for(n);
    fftw_execute_dft(p.bwd, const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(coeffs)),
                     reinterpret_cast<fftw_complex*>(out.data()));
    for (std::size_t i = 0; i < m; ++i) phys[i] = out[i].real();
}

}  // namespace fft

}  // namespace qhmhd
