#pragma once

#include <limits>

#include "qhmhd/field.hpp"

namespace qhmhd {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Coefficient-wise multiplication by i*k_axis; the Nyquist mode of the
// differentiated axis is zeroed so derivatives of real fields stay real.
ScalarField spectral_derivative(const ScalarField& f, int axis);

VectorField grad(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField curl2(const VectorField& v);      // d1 v2 - d2 v1
VectorField perp(const VectorField& v);       // (-v2, v1)
VectorField perp_grad(const ScalarField& f);  // (-d2 f, d1 f)
ScalarField laplacian(const ScalarField& f);

// P = Id + grad (-Lap)^-1 div; the k = 0 mode passes through unchanged.
VectorField leray_project(const VectorField& v);

// Solves Lap g = f for mean-free f; throws MeanViolationError when
// |c_f(0)| > 1e-12 * ||f||_L2.
ScalarField inv_laplacian(const ScalarField& f);

// Two-thirds rule: zero all modes with max(|k1|,|k2|) > n/3.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

// L^p norms by physical-grid quadrature (max over grid points for p = inf);
// vector fields use the pointwise Euclidean magnitude.  Throws std::domain_error
// for p < 1.
double norm_lp(const ScalarField& f, double p);
double norm_lp(const VectorField& v, double p);

// Parseval route for the L2 norm, directly from coefficients.
double norm_l2_spectral(const ScalarField& f);
double norm_l2_spectral(const VectorField& v);

// Pointwise physical product, dealiased by default.
ScalarField multiply(const ScalarField& a, const ScalarField& b, bool do_dealias = true);

// Quadrature of a physical sample array: mean * (2pi)^2.
double integrate(const TorusGrid& grid, std::span<const double> phys);

// max over grid of the Frobenius norm of the gradient tensor of v.
double sup_grad(const VectorField& v);

}  // namespace qhmhd
