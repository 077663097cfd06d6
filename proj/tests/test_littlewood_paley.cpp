#include <doctest.h>

#include <cmath>

#include "qhmhd/initial_data.hpp"
#include "qhmhd/littlewood_paley.hpp"

using namespace qhmhd;

namespace {

// direct Sobolev route: ((2pi)^2 sum (1+|k|^2)^s |c(k)|^2)^{1/2}
double sobolev_norm(const ScalarField& f, double s) {
    const TorusGrid& g = f.grid();
    const int n = g.size();
    double acc = 0.0;
    for (int i1 = 0; i1 < n; ++i1) {
        const double k1 = g.wavenumber(i1);
        for (int i2 = 0; i2 < n; ++i2) {
            const double k2 = g.wavenumber(i2);
            acc += std::pow(1.0 + k1 * k1 + k2 * k2, s) *
                   std::norm(f[static_cast<std::size_t>(i1) * n + i2]);
        }
    }
    return std::sqrt(acc * g.domain_area());
}

// Band-limited bump of width ~1/lambda at a random centre with mild amplitude
// jitter: the concentrating family that exercises the sharp Bernstein scaling
// (independent-phase ensembles do not).
ScalarField bump_field(Rng& rng, const TorusGrid& g, double lambda) {
    ScalarField f(g);
    const double x0 = 2.0 * M_PI * rng.uniform();
    const double y0 = 2.0 * M_PI * rng.uniform();
    const int hi = static_cast<int>(lambda);
    for (int k1 = -hi; k1 <= hi; ++k1)
        for (int k2 = -hi; k2 <= hi; ++k2) {
            if (!(k1 > 0 || (k1 == 0 && k2 > 0))) continue;
            const double rad = std::hypot(double(k1), double(k2));
            if (rad > lambda) continue;
            const double t = rad / lambda;
            const double w = std::exp(-3.0 * t * t) * (1.0 + 0.1 * rng.gauss());
            const std::complex<double> c =
                w * std::exp(std::complex<double>(0.0, -(k1 * x0 + k2 * y0)));
            f.set_coeff(k1, k2, c);
            f.set_coeff(-k1, -k2, std::conj(c));
        }
    return f;
}

}  // namespace

TEST_CASE("cutoff profile shape and partition of unity") {
    CHECK(DyadicDecomposition::chi(0.0) == 1.0);
    CHECK(DyadicDecomposition::chi(1.0) == 1.0);
    CHECK(DyadicDecomposition::chi(2.0) == 0.0);
    CHECK(DyadicDecomposition::chi(1.5) == doctest::Approx(0.5).epsilon(1e-14));
    // monotone bridge, nonnegative phi
    double prev = 1.0;
    for (double r = 1.0; r <= 2.0; r += 0.01) {
        const double c = DyadicDecomposition::chi(r);
        CHECK(c <= prev + 1e-15);
        prev = c;
    }
    for (double r = 0.05; r < 40.0; r += 0.073) CHECK(DyadicDecomposition::phi(r) >= 0.0);

    TorusGrid g(64);
    DyadicDecomposition dec(g);
    CHECK(dec.jmax() == 5);  // 2^jmax <= n/2 = 32
    // partition of unity on every resolved lattice radius
    for (int k1 = 0; k1 <= g.nyquist(); ++k1) {
        for (int k2 = 0; k2 <= g.nyquist(); ++k2) {
            const double r = std::sqrt(double(k1) * k1 + double(k2) * k2);
            if (r > dec.resolved_radius()) continue;
            double sum = 0.0;
            for (int j = -1; j <= dec.jmax(); ++j) sum += dec.block_weight(j, r);
            CHECK(std::abs(sum - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("dyadic blocks of simple fields") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);

    ScalarField c(g);
    c.set_coeff(0, 0, 3.0);
    CHECK(norm_lp(dec.block(c, -1) - c, kInf) < 1e-14);
    for (int j = 0; j <= dec.jmax(); ++j) CHECK(norm_lp(dec.block(c, j), kInf) == 0.0);

    // |k| = 3 sits in blocks j = 1, 2 only (1/2 <= 3*2^-j <= 2 exactly there);
    // the weights are chi(1.5) and 1 - chi(1.5) and sum to one
    ScalarField f = ScalarField::from_function(g, [](double x, double) { return std::cos(3.0 * x); });
    const double w1 = dec.block_weight(1, 3.0);
    const double w2 = dec.block_weight(2, 3.0);
    CHECK(w1 == doctest::Approx(DyadicDecomposition::chi(1.5)).epsilon(1e-14));
    CHECK(w2 == doctest::Approx(1.0 - DyadicDecomposition::chi(1.5)).epsilon(1e-14));
    CHECK(w1 + w2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm_lp(dec.block(f, -1), kInf) < 1e-14);
    CHECK(norm_lp(dec.block(f, 0), kInf) == 0.0);
    CHECK(norm_lp(dec.block(f, 1) - w1 * f, kInf) < 1e-14);
    CHECK(norm_lp(dec.block(f, 2) - w2 * f, kInf) < 1e-14);
    for (int j = 3; j <= dec.jmax(); ++j) CHECK(norm_lp(dec.block(f, j), kInf) < 1e-14);

    CHECK_THROWS_AS((void)dec.block(f, dec.jmax() + 1), ResolutionError);
}

TEST_CASE("blocks reconstruct dealiased fields") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);
    Rng rng(5);
    ScalarField f = dealias(random_scalar(rng, g, 1, 21, 1.0));
    ScalarField sum(g);
    for (int j = -1; j <= dec.jmax(); ++j) sum += dec.block(f, j);
    CHECK(norm_l2_spectral(sum - f) <= 1e-10 * norm_l2_spectral(f));
}

TEST_CASE("low pass operators") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);

    ScalarField f8 = ScalarField::from_function(g, [](double x, double) { return std::sin(8.0 * x); });
    CHECK(norm_lp(dec.low_pass(f8, 0), kInf) < 1e-14);

    Rng rng(9);
    ScalarField f = dealias(random_scalar(rng, g, 1, 21, 1.0));
    CHECK(norm_l2_spectral(dec.low_pass(f, dec.jmax() + 1) - f) <= 1e-10 * norm_l2_spectral(f));

    // telescoping: S_j = sum of blocks up to j-1
    for (int j = 0; j <= dec.jmax() + 1; ++j) {
        ScalarField sum = dec.partial_sum(f, j - 1);
        CHECK(norm_l2_spectral(dec.low_pass(f, j) - sum) <= 1e-10 * norm_l2_spectral(f));
    }

    CHECK_THROWS_AS((void)dec.low_pass(f, dec.jmax() + 2), ResolutionError);
}

TEST_CASE("almost orthogonality of non-adjacent blocks") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);
    Rng rng(13);
    ScalarField f = dealias(random_scalar(rng, g, 1, 21, 1.0));
    // ladder adjacency: Delta_0 vanishes, so (-1, 1) are consecutive blocks
    auto adjacent = [](int j, int jp) {
        if (std::abs(j - jp) <= 1) return true;
        return (j == -1 && jp == 1) || (j == 1 && jp == -1);
    };
    for (int j = -1; j <= dec.jmax(); ++j)
        for (int jp = -1; jp <= dec.jmax(); ++jp) {
            if (adjacent(j, jp)) continue;
            CHECK(norm_lp(dec.block(dec.block(f, j), jp), kInf) == 0.0);
        }
}

TEST_CASE("Besov norm: zero field, single-mode closed form, s-shift") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);
    CHECK(besov_norm(ScalarField(g), BesovIndex{1.5, 2.0, 2.0}, dec) == 0.0);

    ScalarField f = ScalarField::from_function(g, [](double x, double) { return std::cos(3.0 * x); });
    const double c1 = dec.block_weight(1, 3.0);
    const double c2 = dec.block_weight(2, 3.0);

    for (BesovIndex idx : {BesovIndex{1.5, 2.0, 2.0}, BesovIndex{2.0, 4.0, 1.0},
                           BesovIndex{0.75, 2.0, kInf}}) {
        const double base = norm_lp(f, idx.p);
        double expect;
        const double t1 = std::pow(2.0, 1.0 * idx.s) * c1 * base;
        const double t2 = std::pow(2.0, 2.0 * idx.s) * c2 * base;
        if (idx.r == kInf)
            expect = std::max(t1, t2);
        else
            expect = std::pow(std::pow(t1, idx.r) + std::pow(t2, idx.r), 1.0 / idx.r);
        CHECK(besov_norm(f, idx, dec) == doctest::Approx(expect).epsilon(1e-10));
    }

    // raising s by one doubles the block-j contribution 2^j-fold: recheck closed form
    const double n1 = besov_norm(f, BesovIndex{1.0, 2.0, 1.0}, dec);
    const double n2 = besov_norm(f, BesovIndex{2.0, 2.0, 1.0}, dec);
    const double base = norm_lp(f, 2.0);
    CHECK(n1 == doctest::Approx((2.0 * c1 + 4.0 * c2) * base).epsilon(1e-10));
    CHECK(n2 == doctest::Approx((4.0 * c1 + 16.0 * c2) * base).epsilon(1e-10));
}

TEST_CASE("Besov (s,2,2) is equivalent to the Sobolev sum within [1/4,4]") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);
    Rng rng(17);
    for (double s : {0.5, 1.0, 2.0}) {
        for (int trial = 0; trial < 5; ++trial) {
            ScalarField f = random_scalar(rng, g, 1, 14, 1.0);
            const double bn = besov_norm(f, BesovIndex{s, 2.0, 2.0}, dec);
            const double sn = sobolev_norm(f, s);
            CHECK(bn / sn >= 0.25);
            CHECK(bn / sn <= 4.0);
        }
    }
}

TEST_CASE("Besov monotonicity in s for band-limited fields") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);
    Rng rng(19);
    // spectrum away from the lowest block, where the 2^{-s} weight would invert
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField f = random_scalar(rng, g, 2, 16, 1.0);
        for (auto [s_low, s_high] : {std::pair{0.0, 1.0}, {1.0, 2.5}, {0.5, 3.0}}) {
            CHECK(besov_norm(f, BesovIndex{s_low, 2.0, 2.0}, dec) <=
                  besov_norm(f, BesovIndex{s_high, 2.0, 2.0}, dec) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("lipschitz predicate of the index triple") {
    CHECK(BesovIndex{2.5, 2.0, 2.0}.lipschitz());
    CHECK(BesovIndex{2.0, 2.0, 1.0}.lipschitz());       // s = 1 + 2/p, r = 1
    CHECK(!BesovIndex{2.0, 2.0, 2.0}.lipschitz());      // s = 1 + 2/p, r > 1
    CHECK(!BesovIndex{1.5, 2.0, 1.0}.lipschitz());
    CHECK(BesovIndex{1.6, 4.0, kInf}.lipschitz());      // s > 1.5
}

TEST_CASE("Bony decomposition reconstructs the product") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);

    // constant u: total = c*v exactly
    ScalarField c(g);
    c.set_coeff(0, 0, 2.0);
    Rng rng(23);
    ScalarField v = random_scalar(rng, g, 1, 10, 1.0);
    BonyParts parts = bony_decompose(c, v, dec);
    ScalarField total = parts.para_uv + parts.para_vu + parts.remainder;
    CHECK(norm_l2_spectral(total - 2.0 * v) <= 1e-10 * norm_l2_spectral(v));

    // u = v single mode: total = dealias(u*v)
    ScalarField e = ScalarField::from_function(g, [](double x, double y) { return std::cos(2.0 * x + y); });
    parts = bony_decompose(e, e, dec);
    total = parts.para_uv + parts.para_vu + parts.remainder;
    ScalarField prod = multiply(e, e);
    CHECK(norm_l2_spectral(total - prod) <= 1e-10 * norm_l2_spectral(prod));

    // random band-limited pairs
    for (int trial = 0; trial < 10; ++trial) {
        ScalarField u = random_scalar(rng, g, 1, 18, 1.0);
        ScalarField w = random_scalar(rng, g, 1, 18, 1.0);
        parts = bony_decompose(u, w, dec);
        total = parts.para_uv + parts.para_vu + parts.remainder;
        prod = multiply(u, w);
        CHECK(norm_l2_spectral(total - prod) <= 1e-8 * norm_l2_spectral(prod));
    }
}

TEST_CASE("Bernstein ratios") {
    TorusGrid g(64);

    // single mode: annulus ratio is exactly one for the derivative along the mode
    for (int lam : {4, 8, 16}) {
        ScalarField f = ScalarField::from_function(
            g, [&](double x, double) { return std::sin(lam * x); });
        BernsteinReport rep = bernstein_check(f, 2.0, 2.0, 1, lam);
        CHECK(rep.annulus_ratio == doctest::Approx(1.0).epsilon(1e-12));
        BernsteinReport rep2 = bernstein_check(f, 2.0, 2.0, 2, lam);
        CHECK(rep2.annulus_ratio == doctest::Approx(1.0).epsilon(1e-12));
    }

    // ball case, p = q: independent-phase ensembles are already scale-flat
    Rng rng(29);
    std::vector<double> lam = {4.0, 8.0, 16.0};
    std::vector<double> logr;
    for (double l : lam) {
        double mean = 0.0;
        const int draws = 8;
        for (int d = 0; d < draws; ++d) {
            ScalarField f = random_scalar(rng, g, 1, static_cast<int>(l), 1.0);
            mean += bernstein_check(f, 2.0, 2.0, 1, l).ball_ratio;
        }
        logr.push_back(std::log(mean / draws));
    }
    double slope = (logr.back() - logr.front()) / (std::log(lam.back()) - std::log(lam.front()));
    CHECK(std::abs(slope) <= 0.1);

    // ball case, p < q: the measure factor lambda^{2(1/p-1/q)} is saturated by
    // concentrated bumps
    logr.clear();
    for (double l : lam) {
        double mean = 0.0;
        const int draws = 8;
        for (int d = 0; d < draws; ++d) mean += bernstein_check(bump_field(rng, g, l), 2.0, 4.0, 1, l).ball_ratio;
        logr.push_back(std::log(mean / draws));
    }
    slope = (logr.back() - logr.front()) / (std::log(lam.back()) - std::log(lam.front()));
    CHECK(std::abs(slope) <= 0.1);

    // annulus-supported: two-sided bound straight from the support radii
    for (int lam_i : {8, 16}) {
        ScalarField f(g);
        Rng rng2(40 + lam_i);
        ScalarField raw = random_scalar(rng2, g, lam_i / 2, std::min(2 * lam_i, 21), 0.5);
        BernsteinReport rep = bernstein_check(raw, 2.0, 2.0, 1, lam_i);
        CHECK(rep.annulus_ratio >= 0.5 / 1.0001);  // min radius / lambda
        CHECK(rep.annulus_ratio <= 2.0 * 1.0001);  // max radius / lambda
    }

    CHECK_THROWS_AS((void)bernstein_check(ScalarField(g), 2.0, 2.0, 1, 4.0), DegenerateInputError);
}

TEST_CASE("Gagliardo-Nirenberg ratios") {
    TorusGrid g(64);
    ScalarField s = ScalarField::from_function(g, [](double x, double) { return std::sin(x); });

    CHECK(gn_check(s, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    // p = 4 closed form: ||sin||_4 = (3 pi^2/2)^{1/4}, ||sin||_2 = ||cos||_2 = sqrt(2 pi^2)
    const double expect =
        std::pow(1.5 * M_PI * M_PI, 0.25) / std::sqrt(std::sqrt(2.0 * M_PI * M_PI) *
                                                      std::sqrt(2.0 * M_PI * M_PI));
    CHECK(gn_check(s, 4.0) == doctest::Approx(expect).epsilon(1e-10));

    ScalarField nonzero_mean(g);
    nonzero_mean.set_coeff(0, 0, 1.0);
    nonzero_mean.set_coeff(1, 0, 0.1);
    nonzero_mean.set_coeff(-1, 0, 0.1);
    CHECK_THROWS_AS((void)gn_check(nonzero_mean, 4.0), MeanViolationError);
    CHECK_THROWS_AS((void)gn_check(s, 1.5), std::domain_error);
}

TEST_CASE("GN sweep: ratios stay bounded across resolutions") {
    Rng rng(31);
    std::vector<double> maxima;
    for (int n : {32, 64, 128}) {
        TorusGrid g(n);
        double mx = 0.0;
        const int fields = n == 128 ? 100 : 200;  // 500 total
        for (int i = 0; i < fields; ++i) {
            ScalarField u = random_scalar(rng, g, 1, std::min(10, g.dealias_cutoff()), 1.0);
            mx = std::max(mx, gn_check(u, 4.0));
        }
        maxima.push_back(mx);
        CHECK(mx > 0.0);
        CHECK(mx < 2.0);
    }
    for (std::size_t i = 1; i < maxima.size(); ++i)
        CHECK(std::abs(maxima[i] - maxima[0]) < 0.3);
}

TEST_CASE("transport commutator admits one stable constant") {
    TorusGrid g(64);
    DyadicDecomposition dec(g);
    Rng rng(37);

    const BesovIndex idx{2.0, 2.0, 2.0};
    std::vector<double> ratios;
    for (int trial = 0; trial < 20; ++trial) {
        VectorField v = random_divergence_free(rng, g, 1, 8, 1.0);
        ScalarField f = random_scalar(rng, g, 1, 8, 1.0);

        auto norms = commutator_block_norms(v, f, dec, idx.p);
        double acc = 0.0;
        for (int j = -1; j <= dec.jmax(); ++j)
            acc += std::pow(std::pow(2.0, j * idx.s) * norms[j + 1], idx.r);
        const double measured = std::pow(acc, 1.0 / idx.r);

        const double grad_v_inf = sup_grad(v);
        const double grad_f_inf = norm_lp(grad(f), kInf);
        const double f_besov = besov_norm(f, idx, dec);
        const BesovIndex idx1{idx.s - 1.0, idx.p, idx.r};
        const double gv_besov = std::hypot(besov_norm(grad(v.x1()), idx1, dec),
                                           besov_norm(grad(v.x2()), idx1, dec));
        const double bound = grad_v_inf * f_besov + gv_besov * grad_f_inf;
        REQUIRE(bound > 0.0);
        ratios.push_back(measured / bound);
    }
    const double cmax = *std::max_element(ratios.begin(), ratios.end());
    const double cmin = *std::min_element(ratios.begin(), ratios.end());
    CHECK(cmax < 1e3);
    // one constant serves all instances: spread within two orders of magnitude
    CHECK(cmax / std::max(cmin, 1e-12) < 100.0);
}
