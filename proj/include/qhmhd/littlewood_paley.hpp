#pragma once

#include <vector>

#include "qhmhd/spectral_ops.hpp"

namespace qhmhd {

// Besov regularity triple (s, p, r).
struct BesovIndex {
    double s = 0.0;
    double p = 2.0;
    double r = 2.0;

    // embedding into Lipschitz functions in dimension 2
    bool lipschitz() const {
        const double crit = 1.0 + 2.0 / p;
        return s > crit || (s == crit && r == 1.0);
    }
};

// Discrete Littlewood-Paley decomposition on the torus lattice.
//
// chi is the smooth radial cutoff equal to 1 on |xi| <= 1 and 0 on |xi| >= 2,
// with the C-infinity bridge exp(1/(r-2)) / (exp(1/(r-2)) + exp(-1/(r-1))) on
// (1,2); phi(xi) = chi(xi) - chi(2 xi) is supported in 1/2 <= |xi| <= 2.  The
// block ladder is
//
//   Delta_{-1} = chi(D),   Delta_j = phi(2^{-j} D)  for j >= 1,
//
// so block j carries the annulus 2^{j-1} < |k| < 2^{j+1}.  On the integer
// lattice Delta_0 vanishes identically: phi(|k|) != 0 needs 1/2 < |k| < 2 and
// every such weight is already carried by Delta_{-1} (chi(1) = 1), so a j = 0
// block would double-count.  With that convention
//
//   chi(r) + sum_{j>=1} phi(2^{-j} r) = 1   (telescoping, exact),
//
// and the low-pass S_j = sum_{k<=j-1} Delta_k reconstructs every field whose
// spectrum lies inside the resolved radius 2^{jmax}.
class DyadicDecomposition {
public:
    explicit DyadicDecomposition(const TorusGrid& grid);

    const TorusGrid& grid() const { return grid_; }
    int jmax() const { return jmax_; }                    // from 2^{jmax} <= n/2
    double resolved_radius() const { return double(1 << jmax_); }

    static double chi(double r);
    static double phi(double r) { return chi(r) - chi(2.0 * r); }

    // multiplier of Delta_j evaluated at radius r (j = -1 allowed, j = 0 is zero)
    double block_weight(int j, double r) const;
    // multiplier of S_j = sum_{k<=j-1} Delta_k at radius r
    double lowpass_weight(int j, double r) const { return chi(std::ldexp(r, -std::max(j - 1, 0))); }

    ScalarField block(const ScalarField& f, int j) const;     // Delta_j f,  -1 <= j <= jmax
    ScalarField low_pass(const ScalarField& f, int j) const;  // S_j f,       0 <= j <= jmax+1
    // sum_{k=-1}^{J} Delta_k f; J < -1 gives the zero field
    ScalarField partial_sum(const ScalarField& f, int J) const;

private:
    TorusGrid grid_;
    int jmax_;
};

double besov_norm(const ScalarField& f, const BesovIndex& idx, const DyadicDecomposition& dec);
double besov_norm(const VectorField& v, const BesovIndex& idx, const DyadicDecomposition& dec);

// Bony splitting of the pointwise product: uv = T_u(v) + T_v(u) + R(u,v).
// The three parts are returned dealiased and sum to dealias(uv) whenever both
// inputs are spectrally supported inside the resolved radius.
struct BonyParts {
    ScalarField para_uv;    // T_u(v) = sum_j S_{j-1}u Delta_j v
    ScalarField para_vu;    // T_v(u)
    ScalarField remainder;  // sum_{|j-j'|<=1} Delta_j u Delta_{j'} v
};
BonyParts bony_decompose(const ScalarField& u, const ScalarField& v, const DyadicDecomposition& dec);

// Ratios probing the Bernstein inequalities for a field whose spectrum lies in
// the ball B(0, lambda) (ball_ratio, exponents p <= q) or in the annulus
// lambda/2 <= |k| <= 2 lambda (annulus_ratio, exponent p).  deriv_order is the
// order of the full derivative tensor, measured in Frobenius norm.
struct BernsteinReport {
    double ball_ratio;
    double annulus_ratio;
};
BernsteinReport bernstein_check(const ScalarField& f, double p, double q, int deriv_order,
                                double lambda);

// Gagliardo-Nirenberg ratio ||u||_p / (||u||_2^{2/p} ||grad u||_2^{1-2/p}) for
// mean-free u and p in [2, inf).
double gn_check(const ScalarField& u, double p);

// L^p norms of the transport commutators [v.grad, Delta_j]f, j = -1..jmax.
std::vector<double> commutator_block_norms(const VectorField& v, const ScalarField& f,
                                           const DyadicDecomposition& dec, double p);

}  // namespace qhmhd
