#pragma once

#include <map>

#include "qhmhd/params.hpp"
#include "qhmhd/spectral_ops.hpp"
#include "qhmhd/states.hpp"

namespace qhmhd {

// Time derivative of the ideal quasi-homogeneous system
//   dR/dt = -div(R U)
//   dU/dt = -P[ div(U x U - B x B) + R c U ]
//   dB/dt = -div(U x B - B x U)
// with all quadratic products dealiased.  dB/dt is assembled as a perp-gradient
// and is therefore divergence-free identically.
LimitState rhs_ideal_original(const LimitState& s, const PhysParams& params);

// Same dynamics plus nu(1) Lap U and mu(1) Lap B.
LimitState rhs_viscous_limit(const LimitState& s, const PhysParams& params);

// Projected Elsasser form:
//   dR/dt     = -1/2 div(R (alpha+beta))
//   dalpha/dt = -P[ div(beta x alpha) + 1/2 R c (alpha+beta) ]
//   dbeta/dt  = -P[ div(alpha x beta) + 1/2 R c (alpha+beta) ]
ElsasserState rhs_ideal_elsasser(const ElsasserState& e, const PhysParams& params);

// Primitive rotating system advanced in velocity form; the total pressure is a
// variable-coefficient projection (see pressure_solve_variable_density).
PrimitiveState rhs_primitive(const PrimitiveState& s, const PhysParams& params,
                             double pressure_tol = 1e-10);

// Solves div((1/rho) grad Phi) = div(G) for mean-free Phi, preconditioned by the
// constant-coefficient inverse Laplacian; relative residual tolerance tol, at
// most max_iter sweeps.  G - (1/rho) grad Phi is then divergence-free.
ScalarField pressure_solve_variable_density(const ScalarField& rho, const VectorField& G,
                                            double tol = 1e-10, int max_iter = 500);

// Mean-free magnetohydrodynamic pressure pi with
//   -Lap pi = 1/2 div(R c (alpha+beta)) + di dj (alpha_i beta_j).
// beta_route swaps the roles of alpha and beta in the quadratic source (the
// pressure of the beta equation); the two gradients must agree.
ScalarField recover_pressure_elsasser(const ElsasserState& e, const PhysParams& params,
                                      bool beta_route = false);

// Pi = pi - |B|^2/2 (mean-free), with B recovered from the Elsasser pair.
ScalarField hydrodynamic_pressure(const ElsasserState& e, const PhysParams& params);

struct DiagRecord {
    double energy = 0.0;          // 1/2 int (rho |u|^2 + |b|^2), weight 1 for limit states
    double cross_helicity = 0.0;  // int u . b
    std::map<double, double> density_lp;  // p -> ||r||_Lp for p in {2, 4, inf}
};

DiagRecord diagnostics(const PrimitiveState& s, const PhysParams& params);
DiagRecord diagnostics(const LimitState& s);
DiagRecord diagnostics(const ElsasserState& e);

}  // namespace qhmhd
