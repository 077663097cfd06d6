#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qhmhd/errors.hpp"
#include "qhmhd/grid.hpp"

namespace qhmhd {

// Real scalar field on the torus, stored as Fourier coefficients.  Fields built
// from physical samples satisfy the Hermitian symmetry c(-k) = conj(c(k)) up to
// roundoff, so to_physical() discards only an O(eps) imaginary residue.
class ScalarField {
public:
    explicit ScalarField(const TorusGrid& grid);  // zero field
    ScalarField(const TorusGrid& grid, std::vector<std::complex<double>> coeffs);

    static ScalarField from_physical(const TorusGrid& grid, std::span<const double> values);

    template <typename F>
    static ScalarField from_function(const TorusGrid& grid, F&& f) {
        std::vector<double> v(grid.points());
        const int n = grid.size();
        const double h = grid.spacing();
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2) v[static_cast<std::size_t>(i1) * n + i2] = f(i1 * h, i2 * h);
        return from_physical(grid, v);
    }

    const TorusGrid& grid() const { return grid_; }
    std::vector<double> to_physical() const;

    std::span<const std::complex<double>> coeffs() const { return coeffs_; }
    std::span<std::complex<double>> coeffs() { return coeffs_; }
    std::complex<double>& operator[](std::size_t i) { return coeffs_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return coeffs_[i]; }

    // coefficient at signed wavenumber (k1,k2)
    std::complex<double> coeff_at(int k1, int k2) const;
    void set_coeff(int k1, int k2, std::complex<double> c);

    double mean() const { return coeffs_[0].real(); }
    bool finite() const;

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double a);
    void axpy(double a, const ScalarField& o);  // this += a*o

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
    friend ScalarField operator*(double a, ScalarField f) { f *= a; return f; }

private:
    TorusGrid grid_;
    std::vector<std::complex<double>> coeffs_;
};

// Two scalar components sharing one grid.
class VectorField {
public:
    explicit VectorField(const TorusGrid& grid) : x1_(grid), x2_(grid) {}
    VectorField(ScalarField x1, ScalarField x2);

    const TorusGrid& grid() const { return x1_.grid(); }
    const ScalarField& x1() const { return x1_; }
    const ScalarField& x2() const { return x2_; }
    ScalarField& x1() { return x1_; }
    ScalarField& x2() { return x2_; }

    bool finite() const { return x1_.finite() && x2_.finite(); }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double a);
    void axpy(double a, const VectorField& o);

    friend VectorField operator+(VectorField a, const VectorField& b) { a += b; return a; }
    friend VectorField operator-(VectorField a, const VectorField& b) { a -= b; return a; }
    friend VectorField operator*(double a, VectorField v) { v *= a; return v; }

private:
    ScalarField x1_, x2_;
};

inline void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* where) {
    if (a != b) throw GridMismatchError(std::string(where) + ": fields live on different grids");
}

}  // namespace qhmhd
