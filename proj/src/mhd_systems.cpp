// RHS evaluators for the three systems, Elsasser transforms, pressure recovery
// and physical diagnostics.  Evaluators transform the state to physical space
// once, form all pointwise products there, and return dealiased derivatives.

#include <cmath>

#include "qhmhd/rhs.hpp"

namespace qhmhd {

namespace {

using Phys = std::vector<double>;

Phys phys(const ScalarField& f) { return f.to_physical(); }

ScalarField spec(const TorusGrid& g, const Phys& v, bool do_dealias = true) {
    ScalarField f = ScalarField::from_physical(g, v);
    return do_dealias ? dealias(f) : f;
}

Phys pointwise(const Phys& a, const Phys& b) {
    Phys out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

// div of the tensor T_jk = row_j * col_k given its four dealiased entries
VectorField tensor_divergence(const ScalarField& t11, const ScalarField& t12,
                              const ScalarField& t21, const ScalarField& t22) {
    return VectorField(spectral_derivative(t11, 1) + spectral_derivative(t21, 2),
                       spectral_derivative(t12, 1) + spectral_derivative(t22, 2));
}

ScalarField diffuse(const ScalarField& f, double coef) {
    return coef * laplacian(f);
}

// Momentum gauge on the torus: a constant force (the k = 0 mode of the Coriolis
// term) is not the gradient of any periodic pressure, so it is balanced by a
// linear background pressure instead, keeping velocity-type derivatives
// mean-free.  Mean-free trajectories are unaffected.
void zero_mean(VectorField& v) {
    v.x1()[0] = 0.0;
    v.x2()[0] = 0.0;
}

}  // namespace

ElsasserState to_elsasser(const LimitState& s) {
    return ElsasserState(s.R, s.U + s.B, s.U - s.B);
}

LimitState from_elsasser(const ElsasserState& e) {
    return LimitState(e.R, 0.5 * (e.alpha + e.beta), 0.5 * (e.alpha - e.beta));
}

LimitState rhs_ideal_original(const LimitState& s, const PhysParams& params) {
    const TorusGrid& g = s.grid();
    const Phys R = phys(s.R), u1 = phys(s.U.x1()), u2 = phys(s.U.x2());
    const Phys b1 = phys(s.B.x1()), b2 = phys(s.B.x2());
    const std::size_t m = g.points();

    ScalarField Rdot = -1.0 * divergence(VectorField(spec(g, pointwise(R, u1)),
                                                     spec(g, pointwise(R, u2))));

    // momentum tensor U x U - B x B (symmetric)
    Phys m11(m), m12(m), m22(m);
    for (std::size_t i = 0; i < m; ++i) {
        m11[i] = u1[i] * u1[i] - b1[i] * b1[i];
        m12[i] = u1[i] * u2[i] - b1[i] * b2[i];
        m22[i] = u2[i] * u2[i] - b2[i] * b2[i];
    }
    ScalarField s11 = spec(g, m11), s12 = spec(g, m12), s22 = spec(g, m22);
    VectorField divM = tensor_divergence(s11, s12, s12, s22);

    // Coriolis-type forcing R c U
    const Mat2& c = params.rotation;
    Phys f1(m), f2(m);
    for (std::size_t i = 0; i < m; ++i) {
        f1[i] = R[i] * (c.a11 * u1[i] + c.a12 * u2[i]);
        f2[i] = R[i] * (c.a21 * u1[i] + c.a22 * u2[i]);
    }
    VectorField Udot = -1.0 * leray_project(divM + VectorField(spec(g, f1), spec(g, f2)));
    zero_mean(Udot);

    // div(U x B - B x U) = perp_grad(w) with w = u1 b2 - b1 u2
    Phys w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = u1[i] * b2[i] - b1[i] * u2[i];
    VectorField Bdot = -1.0 * perp_grad(spec(g, w));

    return LimitState(std::move(Rdot), std::move(Udot), std::move(Bdot));
}

LimitState rhs_viscous_limit(const LimitState& s, const PhysParams& params) {
    LimitState d = rhs_ideal_original(s, params);
    const double nu1 = params.nu(1.0);
    const double mu1 = params.mu(1.0);
    if (nu1 != 0.0) {
        d.U.x1() += diffuse(s.U.x1(), nu1);
        d.U.x2() += diffuse(s.U.x2(), nu1);
    }
    if (mu1 != 0.0) {
        d.B.x1() += diffuse(s.B.x1(), mu1);
        d.B.x2() += diffuse(s.B.x2(), mu1);
    }
    return d;
}

ElsasserState rhs_ideal_elsasser(const ElsasserState& e, const PhysParams& params) {
    const TorusGrid& g = e.grid();
    const Phys R = phys(e.R), a1 = phys(e.alpha.x1()), a2 = phys(e.alpha.x2());
    const Phys p1 = phys(e.beta.x1()), p2 = phys(e.beta.x2());
    const std::size_t m = g.points();

    Phys s1(m), s2(m);  // alpha + beta
    for (std::size_t i = 0; i < m; ++i) {
        s1[i] = a1[i] + p1[i];
        s2[i] = a2[i] + p2[i];
    }

    ScalarField Rdot = -0.5 * divergence(VectorField(spec(g, pointwise(R, s1)),
                                                     spec(g, pointwise(R, s2))));

    // shared Coriolis-type term 1/2 R c (alpha + beta)
    const Mat2& c = params.rotation;
    Phys f1(m), f2(m);
    for (std::size_t i = 0; i < m; ++i) {
        f1[i] = 0.5 * R[i] * (c.a11 * s1[i] + c.a12 * s2[i]);
        f2[i] = 0.5 * R[i] * (c.a21 * s1[i] + c.a22 * s2[i]);
    }
    VectorField cor(spec(g, f1), spec(g, f2));

    // products beta_j alpha_k; the transposed set gives alpha_j beta_k
    ScalarField t11 = spec(g, pointwise(p1, a1)), t12 = spec(g, pointwise(p1, a2));
    ScalarField t21 = spec(g, pointwise(p2, a1)), t22 = spec(g, pointwise(p2, a2));

    VectorField alphadot = -1.0 * leray_project(tensor_divergence(t11, t12, t21, t22) + cor);
    VectorField betadot = -1.0 * leray_project(tensor_divergence(t11, t21, t12, t22) + cor);
    zero_mean(alphadot);
    zero_mean(betadot);

    return ElsasserState(std::move(Rdot), std::move(alphadot), std::move(betadot));
}

ScalarField pressure_solve_variable_density(const ScalarField& rho, const VectorField& G,
                                            double tol, int max_iter) {
    require_same_grid(rho.grid(), G.grid(), "pressure_solve_variable_density");
    const TorusGrid& g = rho.grid();
    const std::size_t m = g.points();

    Phys a = phys(rho);
    double abar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] <= 0.0) throw VacuumError("pressure solve: density is not positive everywhere");
        a[i] = 1.0 / a[i];
        abar += a[i];
    }
    abar /= static_cast<double>(m);

    ScalarField rhs_div = divergence(G);
    const double rhs_norm = norm_l2_spectral(rhs_div);
    ScalarField Phi(g);
    if (rhs_norm == 0.0) return Phi;

    auto apply_operator = [&](const ScalarField& ph) {
        Phys g1 = phys(spectral_derivative(ph, 1));
        Phys g2 = phys(spectral_derivative(ph, 2));
        for (std::size_t i = 0; i < m; ++i) {
            g1[i] *= a[i];
            g2[i] *= a[i];
        }
        return divergence(VectorField(spec(g, g1), spec(g, g2)));
    };

    double res_norm = rhs_norm;
    for (int it = 0; it < max_iter; ++it) {
        ScalarField residual = rhs_div - apply_operator(Phi);
        res_norm = norm_l2_spectral(residual);
        if (res_norm <= tol * rhs_norm) return Phi;
        Phi.axpy(1.0 / abar, inv_laplacian(residual));
    }
    // final residual check after the last sweep
    res_norm = norm_l2_spectral(rhs_div - apply_operator(Phi));
    if (res_norm <= tol * rhs_norm) return Phi;
    throw EllipticSolverError("variable-density pressure solve did not converge: residual " +
                                  std::to_string(res_norm / rhs_norm) + " (relative) after " +
                                  std::to_string(max_iter) + " iterations",
                              res_norm / rhs_norm, max_iter);
}

PrimitiveState rhs_primitive(const PrimitiveState& s, const PhysParams& params,
                             double pressure_tol) {
    const TorusGrid& g = s.grid();
    const std::size_t m = g.points();
    const double eps = params.eps;
    const double h = params.h();

    const Phys r = phys(s.r), u1 = phys(s.u.x1()), u2 = phys(s.u.x2());
    const Phys b1 = phys(s.b.x1()), b2 = phys(s.b.x2());

    Phys rho(m), inv_rho(m);
    for (std::size_t i = 0; i < m; ++i) {
        rho[i] = 1.0 + eps * r[i];
        if (rho[i] <= 0.0) throw VacuumError("rhs_primitive: vacuum detected, rho <= 0");
        inv_rho[i] = 1.0 / rho[i];
    }

    ScalarField rdot = -1.0 * divergence(VectorField(spec(g, pointwise(r, u1)),
                                                     spec(g, pointwise(r, u2))));

    // convection div(u x u)
    Phys c11(m), c12(m), c22(m);
    for (std::size_t i = 0; i < m; ++i) {
        c11[i] = u1[i] * u1[i];
        c12[i] = u1[i] * u2[i];
        c22[i] = u2[i] * u2[i];
    }
    ScalarField s12 = spec(g, c12);
    VectorField conv = tensor_divergence(spec(g, c11), s12, s12, spec(g, c22));

    // Lorentz force div(b x b) - grad(|b|^2)/2
    Phys l11(m), l12(m), l22(m);
    for (std::size_t i = 0; i < m; ++i) {
        l11[i] = b1[i] * b1[i];
        l12[i] = b1[i] * b2[i];
        l22[i] = b2[i] * b2[i];
    }
    ScalarField sb11 = spec(g, l11), sb12 = spec(g, l12), sb22 = spec(g, l22);
    VectorField force = tensor_divergence(sb11, sb12, sb12, sb22);
    ScalarField half_b2 = 0.5 * (sb11 + sb22);
    force -= grad(half_b2);

    // viscous stress h div(nu(rho) grad u)
    if (h != 0.0) {
        Phys nu_rho(m);
        for (std::size_t i = 0; i < m; ++i) nu_rho[i] = params.nu(rho[i]);
        ScalarField g11 = spec(g, pointwise(nu_rho, phys(spectral_derivative(s.u.x1(), 1))));
        ScalarField g21 = spec(g, pointwise(nu_rho, phys(spectral_derivative(s.u.x1(), 2))));
        ScalarField g12 = spec(g, pointwise(nu_rho, phys(spectral_derivative(s.u.x2(), 1))));
        ScalarField g22 = spec(g, pointwise(nu_rho, phys(spectral_derivative(s.u.x2(), 2))));
        force.x1() += h * (spectral_derivative(g11, 1) + spectral_derivative(g21, 2));
        force.x2() += h * (spectral_derivative(g12, 1) + spectral_derivative(g22, 2));
    }

    // G = -div(u x u) - (1/eps) u_perp + (1/rho) force
    Phys fr1 = phys(force.x1()), fr2 = phys(force.x2());
    for (std::size_t i = 0; i < m; ++i) {
        fr1[i] *= inv_rho[i];
        fr2[i] *= inv_rho[i];
    }
    VectorField G(spec(g, fr1), spec(g, fr2));
    G -= conv;
    G.x1().axpy(1.0 / eps, s.u.x2());   // -(1/eps) u_perp = (1/eps) (u2, -u1)
    G.x2().axpy(-1.0 / eps, s.u.x1());

    ScalarField rho_field = spec(g, rho, false);
    ScalarField Phi = pressure_solve_variable_density(rho_field, G, pressure_tol);
    Phys p1 = phys(spectral_derivative(Phi, 1));
    Phys p2 = phys(spectral_derivative(Phi, 2));
    for (std::size_t i = 0; i < m; ++i) {
        p1[i] *= inv_rho[i];
        p2[i] *= inv_rho[i];
    }
    G -= VectorField(spec(g, p1), spec(g, p2));
    VectorField udot = leray_project(G);  // scrub the elliptic residual
    zero_mean(udot);

    // db/dt = perp_grad(h mu(rho) curl b - w),  w = u1 b2 - b1 u2
    Phys w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = u1[i] * b2[i] - b1[i] * u2[i];
    ScalarField stream = -1.0 * spec(g, w);
    if (h != 0.0) {
        Phys cb = phys(curl2(s.b));
        for (std::size_t i = 0; i < m; ++i) cb[i] *= params.mu(rho[i]);
        stream += h * spec(g, cb);
    }
    VectorField bdot = perp_grad(stream);

    return PrimitiveState(std::move(rdot), std::move(udot), std::move(bdot));
}

namespace {

ScalarField pressure_source(const ElsasserState& e, const PhysParams& params, bool beta_route) {
    const TorusGrid& g = e.grid();
    const std::size_t m = g.points();
    const Phys R = phys(e.R);
    const Phys x1 = phys(beta_route ? e.beta.x1() : e.alpha.x1());
    const Phys x2 = phys(beta_route ? e.beta.x2() : e.alpha.x2());
    const Phys y1 = phys(beta_route ? e.alpha.x1() : e.beta.x1());
    const Phys y2 = phys(beta_route ? e.alpha.x2() : e.beta.x2());

    // di dj (x_i y_j)
    ScalarField t11 = spec(g, pointwise(x1, y1)), t12 = spec(g, pointwise(x1, y2));
    ScalarField t21 = spec(g, pointwise(x2, y1)), t22 = spec(g, pointwise(x2, y2));
    ScalarField quad = spectral_derivative(spectral_derivative(t11, 1), 1) +
                       spectral_derivative(spectral_derivative(t12, 1), 2) +
                       spectral_derivative(spectral_derivative(t21, 2), 1) +
                       spectral_derivative(spectral_derivative(t22, 2), 2);

    const Mat2& c = params.rotation;
    Phys f1(m), f2(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double s1 = x1[i] + y1[i];
        const double s2 = x2[i] + y2[i];
        f1[i] = 0.5 * R[i] * (c.a11 * s1 + c.a12 * s2);
        f2[i] = 0.5 * R[i] * (c.a21 * s1 + c.a22 * s2);
    }
    return quad + divergence(VectorField(spec(g, f1), spec(g, f2)));
}

}  // namespace

ScalarField recover_pressure_elsasser(const ElsasserState& e, const PhysParams& params,
                                      bool beta_route) {
    ScalarField source = pressure_source(e, params, beta_route);
    return inv_laplacian(-1.0 * source);
}

ScalarField hydrodynamic_pressure(const ElsasserState& e, const PhysParams& params) {
    ScalarField pi = recover_pressure_elsasser(e, params);
    const TorusGrid& g = e.grid();
    Phys B1 = phys(0.5 * (e.alpha.x1() - e.beta.x1()));
    Phys B2 = phys(0.5 * (e.alpha.x2() - e.beta.x2()));
    Phys half(B1.size());
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = 0.5 * (B1[i] * B1[i] + B2[i] * B2[i]);
    ScalarField Pi = pi - spec(g, half);
    Pi[0] = 0.0;  // mean-free representative
    return Pi;
}

namespace {

std::map<double, double> density_norms(const ScalarField& r) {
    return {{2.0, norm_lp(r, 2.0)}, {4.0, norm_lp(r, 4.0)}, {kInf, norm_lp(r, kInf)}};
}

}  // namespace

DiagRecord diagnostics(const PrimitiveState& s, const PhysParams& params) {
    const TorusGrid& g = s.grid();
    const std::size_t m = g.points();
    const Phys r = phys(s.r), u1 = phys(s.u.x1()), u2 = phys(s.u.x2());
    const Phys b1 = phys(s.b.x1()), b2 = phys(s.b.x2());
    double e = 0.0, ch = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double rho = 1.0 + params.eps * r[i];
        e += 0.5 * (rho * (u1[i] * u1[i] + u2[i] * u2[i]) + b1[i] * b1[i] + b2[i] * b2[i]);
        ch += u1[i] * b1[i] + u2[i] * b2[i];
    }
    return DiagRecord{e * g.cell_area(), ch * g.cell_area(), density_norms(s.r)};
}

DiagRecord diagnostics(const LimitState& s) {
    const TorusGrid& g = s.grid();
    const std::size_t m = g.points();
    const Phys u1 = phys(s.U.x1()), u2 = phys(s.U.x2());
    const Phys b1 = phys(s.B.x1()), b2 = phys(s.B.x2());
    double e = 0.0, ch = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        e += 0.5 * (u1[i] * u1[i] + u2[i] * u2[i] + b1[i] * b1[i] + b2[i] * b2[i]);
        ch += u1[i] * b1[i] + u2[i] * b2[i];
    }
    return DiagRecord{e * g.cell_area(), ch * g.cell_area(), density_norms(s.R)};
}

DiagRecord diagnostics(const ElsasserState& e) {
    return diagnostics(from_elsasser(e));
}

}  // namespace qhmhd
