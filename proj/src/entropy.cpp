// Relative-entropy functional, remainder bookkeeping and the eps-sweep rate
// experiments.  The J-terms and the unexpanded remainder share every pointwise
// product, so their difference probes only the algebraic manipulations and not
// quadrature error.

#include "qhmhd/entropy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>

namespace qhmhd {

namespace {

using Phys = std::vector<double>;

Phys phys(const ScalarField& f) { return f.to_physical(); }

struct GradTensor {  // d[j][k] = d_j of component k
    Phys d11, d12, d21, d22;
};

GradTensor grad_tensor(const VectorField& v) {
    return GradTensor{phys(spectral_derivative(v.x1(), 1)), phys(spectral_derivative(v.x2(), 1)),
                      phys(spectral_derivative(v.x1(), 2)), phys(spectral_derivative(v.x2(), 2))};
}

}  // namespace

double relative_entropy(const PrimitiveState& p, const LimitState& l, double eps) {
    require_same_grid(p.grid(), l.grid(), "relative_entropy");
    const TorusGrid& g = p.grid();
    const std::size_t m = g.points();
    const Phys r = phys(p.r), u1 = phys(p.u.x1()), u2 = phys(p.u.x2());
    const Phys b1 = phys(p.b.x1()), b2 = phys(p.b.x2());
    const Phys R = phys(l.R), U1 = phys(l.U.x1()), U2 = phys(l.U.x2());
    const Phys B1 = phys(l.B.x1()), B2 = phys(l.B.x2());
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double rho = 1.0 + eps * r[i];
        const double du1 = u1[i] - U1[i], du2 = u2[i] - U2[i];
        const double db1 = b1[i] - B1[i], db2 = b2[i] - B2[i];
        const double dr = r[i] - R[i];
        acc += rho * (du1 * du1 + du2 * du2) + db1 * db1 + db2 * db2 + dr * dr;
    }
    return 0.5 * acc * g.cell_area();
}

RemainderReport remainder_report(const PrimitiveState& p, const LimitState& l,
                                 const PhysParams& params, Scenario scenario) {
    require_same_grid(p.grid(), l.grid(), "remainder_report");
    const TorusGrid& g = p.grid();
    const std::size_t m = g.points();
    const double eps = params.eps;
    const double diss_weight = scenario == Scenario::viscous ? 1.0 : params.h();

    // time derivative of the comparison triplet from the limit-system evaluator
    const LimitState ldot = scenario == Scenario::viscous ? rhs_viscous_limit(l, params)
                                                          : rhs_ideal_original(l, params);

    const Phys r = phys(p.r), u1 = phys(p.u.x1()), u2 = phys(p.u.x2());
    const Phys b1 = phys(p.b.x1()), b2 = phys(p.b.x2());
    const Phys R = phys(l.R), U1 = phys(l.U.x1()), U2 = phys(l.U.x2());
    const Phys B1 = phys(l.B.x1()), B2 = phys(l.B.x2());
    const Phys dtR = phys(ldot.R), dtU1 = phys(ldot.U.x1()), dtU2 = phys(ldot.U.x2());
    const Phys dtB1 = phys(ldot.B.x1()), dtB2 = phys(ldot.B.x2());

    const Phys gR1 = phys(spectral_derivative(l.R, 1)), gR2 = phys(spectral_derivative(l.R, 2));
    const GradTensor gU = grad_tensor(l.U);
    const GradTensor gB = grad_tensor(l.B);
    const GradTensor gu = grad_tensor(p.u);
    const Phys curlB = phys(curl2(l.B));
    const Phys curlb = phys(curl2(p.b));

    const double nu1 = params.nu(1.0);
    const double mu1 = params.mu(1.0);
    const Mat2& c = params.rotation;

    double j1 = 0, j2 = 0, j3 = 0, j4 = 0, j5 = 0, j6 = 0;
    double unexpanded = 0, dissipation = 0;

    for (std::size_t i = 0; i < m; ++i) {
        const double rho = 1.0 + eps * r[i];
        const double nu_rho = params.nu(rho);
        const double mu_rho = params.mu(rho);

        const double du1 = u1[i] - U1[i], du2 = u2[i] - U2[i];
        const double db1 = b1[i] - B1[i], db2 = b2[i] - B2[i];
        const double dr = r[i] - R[i];
        const double dcurlb = curlb[i] - curlB[i];

        // gradient-tensor entries of the differences
        const double gdu11 = gu.d11[i] - gU.d11[i], gdu12 = gu.d12[i] - gU.d12[i];
        const double gdu21 = gu.d21[i] - gU.d21[i], gdu22 = gu.d22[i] - gU.d22[i];

        // (v . grad) applied to U and B, for v = du, db, u, b
        const double duGradU1 = du1 * gU.d11[i] + du2 * gU.d21[i];
        const double duGradU2 = du1 * gU.d12[i] + du2 * gU.d22[i];
        const double dbGradB1 = db1 * gB.d11[i] + db2 * gB.d21[i];
        const double dbGradB2 = db1 * gB.d12[i] + db2 * gB.d22[i];
        const double dbGradU1 = db1 * gU.d11[i] + db2 * gU.d21[i];
        const double dbGradU2 = db1 * gU.d12[i] + db2 * gU.d22[i];
        const double duGradB1 = du1 * gB.d11[i] + du2 * gB.d21[i];
        const double duGradB2 = du1 * gB.d12[i] + du2 * gB.d22[i];
        const double uGradU1 = u1[i] * gU.d11[i] + u2[i] * gU.d21[i];
        const double uGradU2 = u1[i] * gU.d12[i] + u2[i] * gU.d22[i];
        const double uGradB1 = u1[i] * gB.d11[i] + u2[i] * gB.d21[i];
        const double uGradB2 = u1[i] * gB.d12[i] + u2[i] * gB.d22[i];
        const double bGradU1 = b1[i] * gU.d11[i] + b2[i] * gU.d21[i];
        const double bGradU2 = b1[i] * gU.d12[i] + b2[i] * gU.d22[i];
        const double bGradB1 = b1[i] * gB.d11[i] + b2[i] * gB.d21[i];
        const double bGradB2 = b1[i] * gB.d12[i] + b2[i] * gB.d22[i];

        const double cU1 = c.a11 * U1[i] + c.a12 * U2[i];
        const double cU2 = c.a21 * U1[i] + c.a22 * U2[i];

        const double gradU_gradDu =
            gU.d11[i] * gdu11 + gU.d12[i] * gdu12 + gU.d21[i] * gdu21 + gU.d22[i] * gdu22;

        // six-term split (with the limit equations substituted in); the sign of
        // the dr U-perp summand follows the I11 + I12 algebra, which gives
        // +int R U-perp.du - int r U-perp.du = -int dr U-perp.du
        j1 -= dr * (du1 * gR1[i] + du2 * gR2[i]);
        j2 += (dbGradU1 - duGradB1) * db1 + (dbGradU2 - duGradB2) * db2;
        j4 -= (duGradU1 - dbGradB1 + dr * cU1) * du1 + (duGradU2 - dbGradB2 + dr * cU2) * du2;
        j6 -= eps * r[i] *
              ((dtU1[i] + uGradU1) * du1 + (dtU2[i] + uGradU2) * du2);
        if (scenario == Scenario::viscous) {
            j3 -= (mu_rho - mu1) * curlB[i] * dcurlb;
            j5 -= (nu_rho - nu1) * gradU_gradDu;
        } else {
            j3 -= diss_weight * mu_rho * curlB[i] * dcurlb;
            j5 -= diss_weight * nu_rho * gradU_gradDu;
        }

        // unexpanded remainder: material derivatives of the comparison triplet
        unexpanded -= rho * ((dtU1[i] + uGradU1 + (1.0 / eps) * cU1) * du1 +
                             (dtU2[i] + uGradU2 + (1.0 / eps) * cU2) * du2);
        unexpanded -= (dtB1[i] + uGradB1) * db1 + (dtB2[i] + uGradB2) * db2;
        unexpanded -= (dtR[i] + u1[i] * gR1[i] + u2[i] * gR2[i]) * dr;
        unexpanded += bGradU1 * db1 + bGradU2 * db2 + bGradB1 * du1 + bGradB2 * du2;
        unexpanded -= diss_weight * nu_rho * gradU_gradDu;
        unexpanded -= diss_weight * mu_rho * curlB[i] * dcurlb;

        dissipation += diss_weight * (nu_rho * (gdu11 * gdu11 + gdu12 * gdu12 + gdu21 * gdu21 +
                                                gdu22 * gdu22) +
                                      mu_rho * dcurlb * dcurlb);
    }

    const double w = g.cell_area();
    RemainderReport rep;
    rep.j = {j1 * w, j2 * w, j3 * w, j4 * w, j5 * w, j6 * w};
    rep.unexpanded = unexpanded * w;
    rep.dissipation = dissipation * w;
    return rep;
}

namespace {

EntropyRecord make_record(double t, const PrimitiveState& p, const LimitState& l,
                          const PhysParams& params, Scenario scenario) {
    EntropyRecord rec;
    rec.t = t;
    rec.entropy = relative_entropy(p, l, params.eps);
    RemainderReport rep = remainder_report(p, l, params, scenario);
    rec.dissipation = rep.dissipation;
    rec.jterms = rep.j;
    rec.jsum = rep.sum();
    return rec;
}

}  // namespace

PairedTrace run_paired(const PhysParams& params, Scenario scenario, PrimitiveState p0,
                       LimitState l0, const StepperConfig& cfg) {
    cfg.validate();
    require_same_grid(p0.grid(), l0.grid(), "run_paired");

    PrimitiveSystem psys{params};
    LimitSystem lsys{params, scenario == Scenario::viscous};

    PairedTrace out;
    const double dx = p0.grid().spacing();
    double t = 0.0;
    double int_d = 0.0, int_j = 0.0;

    EntropyRecord rec = make_record(0.0, p0, l0, params, scenario);
    const double e0 = rec.entropy;
    out.records.push_back(rec);
    out.sup_entropy = rec.entropy;

    auto p_diag = [&](double time, double bkm) {
        DiagRecord d = psys.diag(p0);
        TraceRow row;
        row.t = time;
        row.energy = d.energy;
        row.cross_helicity = d.cross_helicity;
        row.bkm_integral = bkm;
        row.entropy = out.records.back().entropy;
        row.dissipation = out.records.back().dissipation;
        row.jterms = out.records.back().jterms;
        row.residual = out.records.back().residual;
        out.primitive_trace.rows.push_back(row);
        DiagRecord dl = lsys.diag(l0);
        TraceRow lrow;
        lrow.t = time;
        lrow.energy = dl.energy;
        lrow.cross_helicity = dl.cross_helicity;
        out.limit_trace.rows.push_back(lrow);
    };

    double bkm = 0.0;
    double bkm_prev = psys.bkm_value(p0);
    p_diag(0.0, 0.0);

    while (t < cfg.t_end - 1e-14) {
        const double dt = std::min({cfg.dt,
                                    cfl_limit(dx, cfg.cfl, psys.max_speed(p0), psys.max_diffusion(p0)),
                                    cfl_limit(dx, cfg.cfl, lsys.max_speed(l0), lsys.max_diffusion(l0)),
                                    cfg.t_end - t});
        try {
            p0 = step(psys, p0, dt, t);
            l0 = step(lsys, l0, dt, t);
        } catch (const BlowUpError& e) {
            out.status = RunStatus::blow_up_suspected;
            out.message = e.what();
            return out;
        } catch (const std::runtime_error& e) {
            out.status = RunStatus::solver_error;
            out.message = e.what();
            return out;
        }
        t += dt;

        EntropyRecord next = make_record(t, p0, l0, params, scenario);
        const EntropyRecord& prev = out.records.back();
        int_d += 0.5 * dt * (prev.dissipation + next.dissipation);
        int_j += 0.5 * dt * (prev.jsum + next.jsum);
        next.residual = (next.entropy + int_d) - (e0 + int_j);
        out.records.push_back(next);
        out.sup_entropy = std::max(out.sup_entropy, next.entropy);

        const double bkm_now = psys.bkm_value(p0);
        bkm += 0.5 * dt * (bkm_prev + bkm_now);
        bkm_prev = bkm_now;
        p_diag(t, bkm);
    }
    out.primitive_trace.last_valid_time = t;
    out.limit_trace.last_valid_time = t;
    return out;
}

double entropy_residual(const PairedTrace& tr, double t) {
    for (const auto& rec : tr.records)
        if (std::abs(rec.t - t) <= 1e-9) return rec.residual;
    throw std::invalid_argument("entropy_residual: time " + std::to_string(t) +
                                " is not a sample of the paired trace");
}

FitResult fit_loglog(std::span<const double> eps, std::span<const double> values) {
    if (eps.size() != values.size() || eps.size() < 2)
        throw std::invalid_argument("fit_loglog: need at least two aligned points");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0) || !(values[i] > 0.0) || !std::isfinite(values[i]))
            throw std::invalid_argument("fit_loglog: nonpositive or non-finite point");
        x.push_back(std::log(eps[i]));
        y.push_back(std::log(values[i]));
    }
    const double n = static_cast<double>(x.size());
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= n;
    ym /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = ym - fit.slope * xm;
    return fit;
}

double theoretical_bound(double eps, const PhysParams& params, Scenario scenario, double M,
                         double delta0_sq) {
    if (scenario == Scenario::viscous) {
        const double s = std::max(params.nu.sigma(M * eps), params.mu.sigma(M * eps));
        return delta0_sq + std::max(eps * eps, s * s);
    }
    return delta0_sq + eps * eps + params.h_of(eps);
}

double theoretical_exponent(const PhysParams& params, Scenario scenario) {
    if (scenario == Scenario::viscous) {
        double expo = 2.0;
        if (!params.nu.differentiable()) expo = std::min(expo, 2.0 * params.nu.gamma);
        if (!params.mu.differentiable()) expo = std::min(expo, 2.0 * params.mu.gamma);
        return expo;
    }
    switch (params.h_family) {
        case PhysParams::HFamily::power: return std::min(2.0, params.h_exponent);
        case PhysParams::HFamily::zero: return 2.0;
        case PhysParams::HFamily::constant_one: return 0.0;
    }
    return 0.0;
}

SweepResult run_sweep(const PhysParams& base, Scenario scenario, std::span<const double> eps_list,
                      const LimitState& data, const StepperConfig& cfg, int workers,
                      const PrimitiveState* ill_prepared_offset) {
    cfg.validate();
    if (eps_list.size() < 2) throw std::invalid_argument("run_sweep: need at least two eps values");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("run_sweep: eps values must be strictly decreasing");
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;

    SweepResult res;
    res.eps_values.assign(eps_list.begin(), eps_list.end());
    res.exponent_expected = theoretical_exponent(base, scenario);
    res.data_constant_M =
        norm_lp(data.R, kInf) + norm_lp(data.U, 2.0) + norm_lp(data.B, 2.0);

    const std::size_t n_runs = eps_list.size();
    struct RunSlot {
        RunSlot(PhysParams pp, PrimitiveState st) : params(std::move(pp)), state(std::move(st)) {}

        PhysParams params;
        PrimitiveState state;
        double sup_entropy = 0.0;
        double int_d = 0.0, int_j = 0.0, e0 = 0.0;
        EntropyRecord last;
        RunTrace trace;
        double bkm = 0.0, bkm_prev = 0.0;
        bool alive = true;
        std::string message;

        void record_row(double time) {
            PrimitiveSystem psys{params};
            DiagRecord d = psys.diag(state);
            TraceRow row;
            row.t = time;
            row.energy = d.energy;
            row.cross_helicity = d.cross_helicity;
            row.bkm_integral = bkm;
            row.entropy = last.entropy;
            row.dissipation = last.dissipation;
            row.jterms = last.jterms;
            row.residual = last.residual;
            trace.rows.push_back(row);
        }
    };

    // well-prepared data: the primitive fields start on the limit profile
    std::vector<RunSlot> slots;
    slots.reserve(n_runs);
    for (std::size_t i = 0; i < n_runs; ++i) {
        PhysParams pp = base;
        pp.eps = eps_list[i];
        PrimitiveState p0(data.R, data.U, data.B);
        if (ill_prepared_offset) {
            p0.r += ill_prepared_offset->r;
            p0.u += ill_prepared_offset->u;
            p0.b += ill_prepared_offset->b;
        }
        slots.push_back(RunSlot(pp, std::move(p0)));
    }

    // the one limit trajectory shared by every eps
    LimitState l0 = data;
    LimitSystem lsys{base, scenario == Scenario::viscous};
    const double dx = data.grid().spacing();

    for (auto& s : slots) {
        s.last = make_record(0.0, s.state, l0, s.params, scenario);
        s.e0 = s.last.entropy;
        s.sup_entropy = s.last.entropy;
        s.bkm_prev = PrimitiveSystem{s.params}.bkm_value(s.state);
        s.record_row(0.0);
    }

    double t = 0.0;
    std::atomic<bool> any_alive{true};
    while (t < cfg.t_end - 1e-14 && any_alive.load()) {
        double dt = std::min(cfg.dt, cfg.t_end - t);
        dt = std::min(dt, cfl_limit(dx, cfg.cfl, lsys.max_speed(l0), lsys.max_diffusion(l0)));
        for (auto& s : slots)
            if (s.alive) {
                PrimitiveSystem psys{s.params};
                dt = std::min(dt, cfl_limit(dx, cfg.cfl, psys.max_speed(s.state),
                                            psys.max_diffusion(s.state)));
            }

        try {
            l0 = step(lsys, l0, dt, t);
        } catch (const std::runtime_error& e) {
            res.message = std::string("limit run failed: ") + e.what();
            for (auto& s : slots) s.alive = false;
            break;
        }

        // advance the primitive runs concurrently, bounded by `workers`
        std::atomic<std::size_t> cursor{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= n_runs) return;
                RunSlot& s = slots[i];
                if (!s.alive) continue;
                try {
                    PrimitiveSystem psys{s.params};
                    s.state = step(psys, s.state, dt, t);
                    EntropyRecord next = make_record(t + dt, s.state, l0, s.params, scenario);
                    s.int_d += 0.5 * dt * (s.last.dissipation + next.dissipation);
                    s.int_j += 0.5 * dt * (s.last.jsum + next.jsum);
                    next.residual = (next.entropy + s.int_d) - (s.e0 + s.int_j);
                    s.last = next;
                    s.sup_entropy = std::max(s.sup_entropy, next.entropy);
                    const double bkm_now = psys.bkm_value(s.state);
                    s.bkm += 0.5 * dt * (s.bkm_prev + bkm_now);
                    s.bkm_prev = bkm_now;
                    s.record_row(t + dt);
                } catch (const std::exception& e) {
                    s.alive = false;
                    s.message = e.what();
                    s.trace.status = RunStatus::solver_error;
                    s.trace.message = s.message;
                }
            }
        };
        std::vector<std::future<void>> pool;
        const int nthreads = std::min<int>(workers, static_cast<int>(n_runs));
        for (int w = 1; w < nthreads; ++w) pool.push_back(std::async(std::launch::async, worker));
        worker();
        for (auto& f : pool) f.get();

        t += dt;
        any_alive = false;
        for (auto& s : slots)
            if (s.alive) any_alive = true;
    }

    bool all_ok = res.message.empty();
    for (std::size_t i = 0; i < n_runs; ++i) {
        RunSlot& s = slots[i];
        res.sup_entropy.push_back(s.alive ? s.sup_entropy
                                          : std::numeric_limits<double>::quiet_NaN());
        res.bounds.push_back(
            theoretical_bound(eps_list[i], base, scenario, res.data_constant_M, s.e0));
        res.run_traces.push_back(std::move(s.trace));
        if (!s.alive) {
            all_ok = false;
            if (res.message.empty()) res.message = "run eps=" + std::to_string(eps_list[i]) +
                                                   " failed: " + s.message;
        }
    }

    // fit over the completed runs
    std::vector<double> fe, fv;
    for (std::size_t i = 0; i < n_runs; ++i)
        if (std::isfinite(res.sup_entropy[i]) && res.sup_entropy[i] > 0.0) {
            fe.push_back(res.eps_values[i]);
            fv.push_back(res.sup_entropy[i]);
        }
    if (fe.size() >= 2) {
        FitResult fit = fit_loglog(fe, fv);
        res.slope = fit.slope;
        res.intercept = fit.intercept;
    } else if (all_ok) {
        all_ok = false;
        res.message = "not enough positive entropy values for a fit";
    }
    res.pass = all_ok && res.slope >= res.exponent_expected - 0.3;
    return res;
}

}  // namespace qhmhd
