#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace qhmhd {

// Uniform n-by-n grid on the periodic square [0,2pi)^2 with integer wavenumbers
// k in {-n/2+1, ..., n/2} on each axis.  Physical index (i1,i2) maps to the point
// (2pi i1/n, 2pi i2/n) and to the flat offset i1*n + i2; the same layout is used
// for Fourier coefficients.
class TorusGrid {
public:
    explicit TorusGrid(int n);

    int size() const { return n_; }
    std::size_t points() const { return static_cast<std::size_t>(n_) * n_; }
    double spacing() const { return 2.0 * M_PI / n_; }
    double cell_area() const { return spacing() * spacing(); }
    double domain_area() const { return 4.0 * M_PI * M_PI; }

    // index -> signed wavenumber
    int wavenumber(int idx) const { return idx <= n_ / 2 ? idx : idx - n_; }
    int nyquist() const { return n_ / 2; }
    // two-thirds rule: modes with max(|k1|,|k2|) > cutoff are discarded
    int dealias_cutoff() const { return n_ / 3; }

    bool operator==(const TorusGrid& o) const { return n_ == o.n_; }
    bool operator!=(const TorusGrid& o) const { return n_ != o.n_; }

private:
    int n_;
};

namespace fft {

// Synthesis convention: coeffs c(k) represent f(x) = sum_k c(k) exp(i k.x).
// Plans are cached per grid size; execution is safe to call concurrently.
void forward(const TorusGrid& grid, const double* phys, std::complex<double>* coeffs);
void inverse(const TorusGrid& grid, const std::complex<double>* coeffs, double* phys);

}  // namespace fft

}  // namespace qhmhd
