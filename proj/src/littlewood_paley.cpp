#include "qhmhd/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qhmhd {

DyadicDecomposition::DyadicDecomposition(const TorusGrid& grid) : grid_(grid) {
    int j = 1;
    while ((2 << j) <= grid.nyquist()) ++j;  // 2^j <= n/2
    jmax_ = j;
}

double DyadicDecomposition::chi(double r) {
    r = std::abs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double a = std::exp(1.0 / (r - 2.0));   // -> 0 as r -> 2
    const double b = std::exp(-1.0 / (r - 1.0));  // -> 0 as r -> 1
    return a / (a + b);
}

double DyadicDecomposition::block_weight(int j, double r) const {
    if (j == -1) return chi(r);
    if (j == 0) return 0.0;  // empty on the integer lattice
    return phi(std::ldexp(r, -j));
}

namespace {

template <typename W>
ScalarField apply_radial(const ScalarField& f, W&& weight) {
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
            oc[idx] = weight(std::sqrt(k1 * k1 + k2 * k2)) * in[idx];
        }
    }
    return out;
}

}  // namespace

ScalarField DyadicDecomposition::block(const ScalarField& f, int j) const {
    require_same_grid(grid_, f.grid(), "DyadicDecomposition::block");
    if (j < -1 || j > jmax_)
        throw ResolutionError("dyadic block index " + std::to_string(j) + " outside [-1, jmax=" +
                              std::to_string(jmax_) + "]");
    return apply_radial(f, [&](double r) { return block_weight(j, r); });
}

ScalarField DyadicDecomposition::low_pass(const ScalarField& f, int j) const {
    require_same_grid(grid_, f.grid(), "DyadicDecomposition::low_pass");
    if (j < 0 || j > jmax_ + 1)
        throw ResolutionError("low-pass index " + std::to_string(j) + " outside [0, jmax+1]");
    return apply_radial(f, [&](double r) { return lowpass_weight(j, r); });
}

ScalarField DyadicDecomposition::partial_sum(const ScalarField& f, int J) const {
    require_same_grid(grid_, f.grid(), "DyadicDecomposition::partial_sum");
    if (J < -1) return ScalarField(grid_);
    J = std::min(J, jmax_);
    // telescoped: sum_{k=-1}^{J} Delta_k = chi(2^{-J} |k|) for J >= 1, chi otherwise
    const int shift = std::max(J, 0);
    return apply_radial(f, [&](double r) { return chi(std::ldexp(r, -shift)); });
}

namespace {

double lr_accumulate(const std::vector<double>& terms, double r) {
    if (r == kInf) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double acc = 0.0;
    for (double t : terms) acc += std::pow(t, r);
    return std::pow(acc, 1.0 / r);
}

void check_besov_exponents(const BesovIndex& idx) {
    if (idx.p < 1.0 || idx.r < 1.0) throw std::domain_error("besov_norm: p, r must be >= 1");
}

}  // namespace

double besov_norm(const ScalarField& f, const BesovIndex& idx, const DyadicDecomposition& dec) {
    check_besov_exponents(idx);
    std::vector<double> terms;
    terms.reserve(dec.jmax() + 2);
    for (int j = -1; j <= dec.jmax(); ++j)
        terms.push_back(std::pow(2.0, j * idx.s) * norm_lp(dec.block(f, j), idx.p));
    return lr_accumulate(terms, idx.r);
}

double besov_norm(const VectorField& v, const BesovIndex& idx, const DyadicDecomposition& dec) {
    check_besov_exponents(idx);
    std::vector<double> terms;
    terms.reserve(dec.jmax() + 2);
    for (int j = -1; j <= dec.jmax(); ++j) {
        VectorField blk(dec.block(v.x1(), j), dec.block(v.x2(), j));
        terms.push_back(std::pow(2.0, j * idx.s) * norm_lp(blk, idx.p));
    }
    return lr_accumulate(terms, idx.r);
}

BonyParts bony_decompose(const ScalarField& u, const ScalarField& v, const DyadicDecomposition& dec) {
    require_same_grid(u.grid(), v.grid(), "bony_decompose");
    const TorusGrid& g = u.grid();
    const int jmax = dec.jmax();
    const std::size_t m = g.points();

    // physical samples of all blocks and of the running low-pass sums
    std::vector<std::vector<double>> bu(jmax + 2), bv(jmax + 2);
    for (int j = -1; j <= jmax; ++j) {
        bu[j + 1] = dec.block(u, j).to_physical();
        bv[j + 1] = dec.block(v, j).to_physical();
    }

    std::vector<double> su(m, 0.0), sv(m, 0.0);  // S_{j-1} = sum of blocks <= j-2
    std::vector<double> tu(m, 0.0), tv(m, 0.0), rem(m, 0.0);
    for (int j = -1; j <= jmax; ++j) {
        const auto& dju = bu[j + 1];
        const auto& djv = bv[j + 1];
        for (std::size_t i = 0; i < m; ++i) {
            tu[i] += su[i] * djv[i];  // T_u(v) term
            tv[i] += sv[i] * dju[i];  // T_v(u) term
        }
        for (int jp = std::max(-1, j - 1); jp <= std::min(jmax, j + 1); ++jp) {
            const auto& djpv = bv[jp + 1];
            for (std::size_t i = 0; i < m; ++i) rem[i] += dju[i] * djpv[i];
        }
        // advance the low-pass sums so that next iteration sees S_{j}u = sum_{k<=j-1}
        if (j >= 0) {
            const auto& pu = bu[j];  // block j-1
            const auto& pv = bv[j];
            for (std::size_t i = 0; i < m; ++i) {
                su[i] += pu[i];
                sv[i] += pv[i];
            }
        }
    }
    return BonyParts{dealias(ScalarField::from_physical(g, tu)),
                     dealias(ScalarField::from_physical(g, tv)),
                     dealias(ScalarField::from_physical(g, rem))};
}

namespace {

// all order-k derivative components of f (2^k fields)
std::vector<ScalarField> derivative_tensor(const ScalarField& f, int order) {
    std::vector<ScalarField> comps{f};
    for (int d = 0; d < order; ++d) {
        std::vector<ScalarField> next;
        next.reserve(comps.size() * 2);
        for (const auto& c : comps) {
            next.push_back(spectral_derivative(c, 1));
            next.push_back(spectral_derivative(c, 2));
        }
        comps = std::move(next);
    }
    return comps;
}

double tensor_lp(const TorusGrid& g, const std::vector<ScalarField>& comps, double p) {
    std::vector<std::vector<double>> phys;
    phys.reserve(comps.size());
    for (const auto& c : comps) phys.push_back(c.to_physical());
    std::vector<double> mag(g.points(), 0.0);
    for (const auto& ph : phys)
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] += ph[i] * ph[i];
    for (auto& v : mag) v = std::sqrt(v);
    if (p == kInf) {
        double m = 0.0;
        for (double v : mag) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (double v : mag) acc += std::pow(v, p);
    return std::pow(acc * g.cell_area(), 1.0 / p);
}

}  // namespace

BernsteinReport bernstein_check(const ScalarField& f, double p, double q, int deriv_order,
                                double lambda) {
    if (p < 1.0 || q < p) throw std::domain_error("bernstein_check: need 1 <= p <= q");
    if (lambda <= 0.0) throw std::domain_error("bernstein_check: lambda must be positive");
    const double base_p = norm_lp(f, p);
    if (base_p == 0.0) throw DegenerateInputError("bernstein_check: empty spectrum");

    auto tensor = derivative_tensor(f, deriv_order);
    const double dk_q = tensor_lp(f.grid(), tensor, q);
    const double dk_p = tensor_lp(f.grid(), tensor, p);

    const double ball_scale = std::pow(lambda, deriv_order + 2.0 * (1.0 / p - 1.0 / q));
    const double ann_scale = std::pow(lambda, deriv_order);
    return BernsteinReport{dk_q / (ball_scale * base_p), dk_p / (ann_scale * base_p)};
}

double gn_check(const ScalarField& u, double p) {
    if (p < 2.0 || p == kInf) throw std::domain_error("gn_check: p must lie in [2, inf)");
    const double l2 = norm_l2_spectral(u);
    if (l2 == 0.0) return 0.0;
    if (std::abs(u.mean()) > 1e-12 * l2) throw MeanViolationError("gn_check: input must be mean-free");
    const double grad_l2 = norm_l2_spectral(grad(u));
    if (grad_l2 == 0.0) throw DegenerateInputError("gn_check: gradient vanishes but field does not");
    const double lp = norm_lp(u, p);
    return lp / (std::pow(norm_lp(u, 2.0), 2.0 / p) * std::pow(grad_l2, 1.0 - 2.0 / p));
}

std::vector<double> commutator_block_norms(const VectorField& v, const ScalarField& f,
                                           const DyadicDecomposition& dec, double p) {
    require_same_grid(v.grid(), f.grid(), "commutator_block_norms");
    const TorusGrid& g = f.grid();
    const std::size_t m = g.points();

    auto v1 = v.x1().to_physical();
    auto v2 = v.x2().to_physical();
    auto advect = [&](const ScalarField& s) {
        auto d1 = spectral_derivative(s, 1).to_physical();
        auto d2 = spectral_derivative(s, 2).to_physical();
        std::vector<double> out(m);
        for (std::size_t i = 0; i < m; ++i) out[i] = v1[i] * d1[i] + v2[i] * d2[i];
        return dealias(ScalarField::from_physical(g, out));
    };

    const ScalarField vgrad_f = advect(f);
    std::vector<double> norms;
    norms.reserve(dec.jmax() + 2);
    for (int j = -1; j <= dec.jmax(); ++j) {
        ScalarField comm = advect(dec.block(f, j)) - dec.block(vgrad_f, j);
        norms.push_back(norm_lp(comm, p));
    }
    return norms;
}

}  // namespace qhmhd
