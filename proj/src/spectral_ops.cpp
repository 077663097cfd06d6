#include "qhmhd/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qhmhd {

ScalarField spectral_derivative(const ScalarField& f, int axis) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("spectral_derivative: axis must be 1 or 2");
    const TorusGrid& g = f.grid();
    const int n = g.size();
    const int nyq = g.nyquist();
    ScalarField out(g);
    auto in = f.coeffs();
    auto oc = out.coeffs();
    for (int i1 = 0; i1 < n; ++i1) {
        const int k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const int k2 = g.wavenumber(i2);
            const int k = (axis == 1) ? k1 : k2;
            const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
            oc[idx] = (k == nyq) ? 0.0 : std::complex<double>(0.0, k) * in[idx];
        }
    }
    return out;
}

VectorField grad(const ScalarField& f) {
    return VectorField(spectral_derivative(f, 1), spectral_derivative(f, 2));
}

ScalarField divergence(const VectorField& v) {
    return spectral_derivative(v.x1(), 1) + spectral_derivative(v.x2(), 2);
}

ScalarField curl2(const VectorField& v) {
    return spectral_derivative(v.x2(), 1) - spectral_derivative(v.x1(), 2);
}

VectorField perp(const VectorField& v) {
    return VectorField(-1.0 * v.x2(), v.x1());
}

VectorField perp_grad(const ScalarField& f) {
    return VectorField(-1.0 * spectral_derivative(f, 2), spectral_derivative(f, 1));
}

ScalarField laplacian(const ScalarField& f) {
    const TorusGrid& g = f.grid();
    const int n = g.size();
    ScalarField out(g);
    auto in = f.coeffs();
    auto oc = out.coeffs();
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
            oc[idx] = -(k1 * k1 + k2 * k2) * in[idx];
        }
    }
    return out;
}

VectorField leray_project(const VectorField& v) {
    const TorusGrid& g = v.grid();
    const int n = g.size();
    VectorField out(g);
    auto v1 = v.x1().coeffs();
    auto v2 = v.x2().coeffs();
    auto o1 = out.x1().coeffs();
    auto o2 = out.x2().coeffs();
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
            const double k2norm = k1 * k1 + k2 * k2;
            if (k2norm == 0.0) {
                o1[idx] = v1[idx];
                o2[idx] = v2[idx];
            } else {
                const std::complex<double> kv = (k1 * v1[idx] + k2 * v2[idx]) / k2norm;
                o1[idx] = v1[idx] - k1 * kv;
                o2[idx] = v2[idx] - k2 * kv;
            }
        }
    }
    return out;
}

ScalarField inv_laplacian(const ScalarField& f) {
    const double l2 = norm_l2_spectral(f);
    if (std::abs(f.coeffs()[0]) > 1e-12 * l2)
        throw MeanViolationError("inv_laplacian: input has nonzero mean");
    const TorusGrid& g = f.grid();
    const int n = g.size();
    ScalarField out(g);
    auto in = f.coeffs();
    auto oc = out.coeffs();
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            const std::size_t idx = static_cast<std::size_t>(i1) * n + i2;
            const double k2norm = k1 * k1 + k2 * k2;
            oc[idx] = (k2norm == 0.0) ? 0.0 : in[idx] / (-k2norm);
        }
    }
    return out;
}

ScalarField dealias(const ScalarField& f) {
    const TorusGrid& g = f.grid();
    const int n = g.size();
    const int cut = g.dealias_cutoff();
    ScalarField out = f;
    auto oc = out.coeffs();
    for (int i1 = 0; i1 < n; ++i1) {
        const int k1 = std::abs(g.wavenumber(i1));
        for (int i2 = 0; i2 < n; ++i2) {
            const int k2 = std::abs(g.wavenumber(i2));
            if (std::max(k1, k2) > cut) oc[static_cast<std::size_t>(i1) * n + i2] = 0.0;
        }
    }
    return out;
}

VectorField dealias(const VectorField& v) {
    return VectorField(dealias(v.x1()), dealias(v.x2()));
}

namespace {

double quadrature_lp(const TorusGrid& g, std::span<const double> magnitude, double p) {
    if (p < 1.0) throw std::domain_error("norm_lp: p must be >= 1");
    if (p == kInf) {
        double m = 0.0;
        for (double v : magnitude) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    for (double v : magnitude) acc += std::pow(std::abs(v), p);
    return std::pow(acc * g.cell_area(), 1.0 / p);
}

}  // namespace

double norm_lp(const ScalarField& f, double p) {
    return quadrature_lp(f.grid(), f.to_physical(), p);
}

double norm_lp(const VectorField& v, double p) {
    auto a = v.x1().to_physical();
    auto b = v.x2().to_physical();
    std::vector<double> mag(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) mag[i] = std::hypot(a[i], b[i]);
    return quadrature_lp(v.grid(), mag, p);
}

double norm_l2_spectral(const ScalarField& f) {
    double acc = 0.0;
    for (const auto& c : f.coeffs()) acc += std::norm(c);
    return std::sqrt(acc * f.grid().domain_area());
}

double norm_l2_spectral(const VectorField& v) {
    return std::hypot(norm_l2_spectral(v.x1()), norm_l2_spectral(v.x2()));
}

ScalarField multiply(const ScalarField& a, const ScalarField& b, bool do_dealias) {
    require_same_grid(a.grid(), b.grid(), "multiply");
    auto pa = a.to_physical();
    auto pb = b.to_physical();
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    ScalarField prod = ScalarField::from_physical(a.grid(), pa);
    return do_dealias ? dealias(prod) : prod;
}

double integrate(const TorusGrid& grid, std::span<const double> phys) {
    double acc = 0.0;
    for (double v : phys) acc += v;
    return acc * grid.cell_area();
}

double sup_grad(const VectorField& v) {
    auto d11 = spectral_derivative(v.x1(), 1).to_physical();
    auto d21 = spectral_derivative(v.x1(), 2).to_physical();
    auto d12 = spectral_derivative(v.x2(), 1).to_physical();
    auto d22 = spectral_derivative(v.x2(), 2).to_physical();
    double m = 0.0;
    for (std::size_t i = 0; i < d11.size(); ++i) {
        const double s = d11[i] * d11[i] + d21[i] * d21[i] + d12[i] * d12[i] + d22[i] * d22[i];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

}  // namespace qhmhd
