#include "qhmhd/initial_data.hpp"

#include "qhmhd/errors.hpp"

namespace qhmhd {

namespace {

void check_band(const TorusGrid& grid, int lo, int hi) {
    if (lo < 1 || hi < lo)
        throw ConfigError("initial data band must satisfy 1 <= band_lo <= band_hi");
    if (hi > grid.dealias_cutoff())
        throw ConfigError("initial data band exceeds the dealiasing cutoff n/3 = " +
                          std::to_string(grid.dealias_cutoff()));
}

// Fill Hermitian pairs over the half lattice in a fixed traversal order.
ScalarField random_band_field(Rng& rng, const TorusGrid& grid, int lo, int hi) {
    ScalarField f(grid);
    for (int k1 = -hi; k1 <= hi; ++k1) {
        for (int k2 = -hi; k2 <= hi; ++k2) {
            if (!(k1 > 0 || (k1 == 0 && k2 > 0))) continue;  // one of each conjugate pair
            const double rad = std::sqrt(double(k1) * k1 + double(k2) * k2);
            if (rad < lo || rad > hi) continue;
            const std::complex<double> c(rng.gauss(), rng.gauss());
            f.set_coeff(k1, k2, c);
            f.set_coeff(-k1, -k2, std::conj(c));
        }
    }
    return f;
}

void normalize_sup(ScalarField& f, double amplitude) {
    const double sup = norm_lp(f, kInf);
    if (sup > 0.0)
        f *= amplitude / sup;
    else
        f *= 0.0;
}

}  // namespace

ScalarField random_scalar(Rng& rng, const TorusGrid& grid, int band_lo, int band_hi,
                          double amplitude) {
    check_band(grid, band_lo, band_hi);
    ScalarField f = random_band_field(rng, grid, band_lo, band_hi);
    normalize_sup(f, amplitude);
    return f;
}

VectorField random_divergence_free(Rng& rng, const TorusGrid& grid, int band_lo, int band_hi,
                                   double amplitude) {
    check_band(grid, band_lo, band_hi);
    VectorField v(random_band_field(rng, grid, band_lo, band_hi),
                  random_band_field(rng, grid, band_lo, band_hi));
    v = leray_project(v);
    const double sup = norm_lp(v, kInf);
    if (sup > 0.0)
        v *= amplitude / sup;
    else
        v *= 0.0;
    return v;
}

LimitState generate_limit_data(const InitialSpec& spec, const TorusGrid& grid) {
    switch (spec.kind) {
        case InitialSpec::Kind::zero:
            return LimitState(grid);
        case InitialSpec::Kind::taylor_green: {
            ScalarField R(grid);
            VectorField U(
                ScalarField::from_function(grid, [&](double x, double y) {
                    return spec.amp_u * std::sin(x) * std::cos(y);
                }),
                ScalarField::from_function(grid, [&](double x, double y) {
                    return -spec.amp_u * std::cos(x) * std::sin(y);
                }));
            return LimitState(std::move(R), std::move(U), VectorField(grid));
        }
        case InitialSpec::Kind::shear: {
            ScalarField R = ScalarField::from_function(
                grid, [&](double x, double) { return spec.amp_r * std::cos(x); });
            VectorField U(ScalarField::from_function(
                              grid, [&](double, double y) { return spec.amp_u * std::sin(y); }),
                          ScalarField(grid));
            VectorField B(ScalarField::from_function(
                              grid, [&](double, double y) { return spec.amp_b * std::sin(y); }),
                          ScalarField(grid));
            return LimitState(std::move(R), std::move(U), std::move(B));
        }
        case InitialSpec::Kind::random: {
            Rng rng(spec.seed);
            ScalarField R = random_scalar(rng, grid, spec.band_lo, spec.band_hi, spec.amp_r);
            VectorField U = random_divergence_free(rng, grid, spec.band_lo, spec.band_hi, spec.amp_u);
            VectorField B = random_divergence_free(rng, grid, spec.band_lo, spec.band_hi, spec.amp_b);
            return LimitState(std::move(R), std::move(U), std::move(B));
        }
    }
    return LimitState(grid);
}

PrimitiveState generate_primitive_data(const InitialSpec& spec, const TorusGrid& grid) {
    LimitState l = generate_limit_data(spec, grid);
    return PrimitiveState(std::move(l.R), std::move(l.U), std::move(l.B));
}

ElsasserState generate_elsasser_data(const InitialSpec& spec, const TorusGrid& grid) {
    return to_elsasser(generate_limit_data(spec, grid));
}

}  // namespace qhmhd
