#pragma once

#include "qhmhd/field.hpp"

namespace qhmhd {

// (r, u, b): density oscillation rho = 1 + eps*r plus divergence-free velocity
// and magnetic fields of the primitive rotating system.
struct PrimitiveState {
    ScalarField r;
    VectorField u;
    VectorField b;

    PrimitiveState(ScalarField r_, VectorField u_, VectorField b_)
        : r(std::move(r_)), u(std::move(u_)), b(std::move(b_)) {
        require_same_grid(r.grid(), u.grid(), "PrimitiveState");
        require_same_grid(r.grid(), b.grid(), "PrimitiveState");
    }
    explicit PrimitiveState(const TorusGrid& g) : r(g), u(g), b(g) {}

    const TorusGrid& grid() const { return r.grid(); }
    bool finite() const { return r.finite() && u.finite() && b.finite(); }
    void axpy(double a, const PrimitiveState& o) {
        r.axpy(a, o.r);
        u.axpy(a, o.u);
        b.axpy(a, o.b);
    }
    PrimitiveState scaled_sum(double a, const PrimitiveState& o) const {
        PrimitiveState s = *this;
        s.axpy(a, o);
        return s;
    }
};

// (R, U, B) of the limit quasi-homogeneous systems.
struct LimitState {
    ScalarField R;
    VectorField U;
    VectorField B;

    LimitState(ScalarField R_, VectorField U_, VectorField B_)
        : R(std::move(R_)), U(std::move(U_)), B(std::move(B_)) {
        require_same_grid(R.grid(), U.grid(), "LimitState");
        require_same_grid(R.grid(), B.grid(), "LimitState");
    }
    explicit LimitState(const TorusGrid& g) : R(g), U(g), B(g) {}

    const TorusGrid& grid() const { return R.grid(); }
    bool finite() const { return R.finite() && U.finite() && B.finite(); }
    void axpy(double a, const LimitState& o) {
        R.axpy(a, o.R);
        U.axpy(a, o.U);
        B.axpy(a, o.B);
    }
    LimitState scaled_sum(double a, const LimitState& o) const {
        LimitState s = *this;
        s.axpy(a, o);
        return s;
    }
};

// (R, alpha, beta) with alpha = U + B, beta = U - B.
struct ElsasserState {
    ScalarField R;
    VectorField alpha;
    VectorField beta;

    ElsasserState(ScalarField R_, VectorField a_, VectorField b_)
        : R(std::move(R_)), alpha(std::move(a_)), beta(std::move(b_)) {
        require_same_grid(R.grid(), alpha.grid(), "ElsasserState");
        require_same_grid(R.grid(), beta.grid(), "ElsasserState");
    }
    explicit ElsasserState(const TorusGrid& g) : R(g), alpha(g), beta(g) {}

    const TorusGrid& grid() const { return R.grid(); }
    bool finite() const { return R.finite() && alpha.finite() && beta.finite(); }
    void axpy(double a, const ElsasserState& o) {
        R.axpy(a, o.R);
        alpha.axpy(a, o.alpha);
        beta.axpy(a, o.beta);
    }
    ElsasserState scaled_sum(double a, const ElsasserState& o) const {
        ElsasserState s = *this;
        s.axpy(a, o);
        return s;
    }
};

ElsasserState to_elsasser(const LimitState& s);
LimitState from_elsasser(const ElsasserState& e);

}  // namespace qhmhd
