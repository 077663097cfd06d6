#pragma once

#include <array>
#include <string>
#include <vector>

#include "qhmhd/littlewood_paley.hpp"
#include "qhmhd/rhs.hpp"

namespace qhmhd {

struct StepperConfig {
    double dt = 1e-3;    // base step, > 0
    double cfl = 0.9;    // safety factor in (0,1]
    double t_end = 1.0;
    enum class Scheme { rk4 } scheme = Scheme::rk4;
    bool monitor_bkm = true;

    void validate() const {
        if (dt <= 0.0) throw std::invalid_argument("StepperConfig: dt must be positive");
        if (cfl <= 0.0 || cfl > 1.0) throw std::invalid_argument("StepperConfig: cfl must lie in (0,1]");
        if (t_end < 0.0) throw std::invalid_argument("StepperConfig: t_end must be nonnegative");
    }
};

enum class RunStatus { completed, blow_up_suspected, solver_error };

inline const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::completed: return "completed";
        case RunStatus::blow_up_suspected: return "blow-up-suspected";
        case RunStatus::solver_error: return "solver-error";
    }
    return "unknown";
}

// One sampled row; the entropy block stays zero unless a paired run fills it.
struct TraceRow {
    double t = 0.0;
    double energy = 0.0;
    double cross_helicity = 0.0;
    double bkm_integral = 0.0;
    double entropy = 0.0;
    double dissipation = 0.0;
    std::array<double, 6> jterms{};
    double residual = 0.0;
};

struct RunTrace {
    std::vector<TraceRow> rows;
    RunStatus status = RunStatus::completed;
    double last_valid_time = 0.0;
    double lifespan_hint = 0.0;  // 1 / ||data||_{B^{2.5}_{2,2}}, reported only
    std::string message;

    double bkm_integral() const { return rows.empty() ? 0.0 : rows.back().bkm_integral; }
};

// ---------------------------------------------------------------------------
// system adapters: state type + RHS + projection + stability/monitor hooks
// ---------------------------------------------------------------------------

struct LimitSystem {
    using State = LimitState;

    PhysParams params;
    bool with_diffusion = true;  // viscous limit vs ideal quasi-homogeneous

    State rhs(const State& s) const {
        return with_diffusion ? rhs_viscous_limit(s, params) : rhs_ideal_original(s, params);
    }
    void postprocess(State& s) const {
        s.U = leray_project(s.U);
        s.B = leray_project(s.B);
    }
    double max_speed(const State& s) const { return norm_lp(s.U, kInf) + norm_lp(s.B, kInf); }
    double max_diffusion(const State&) const {
        return with_diffusion ? std::max(params.nu(1.0), params.mu(1.0)) : 0.0;
    }
    double bkm_value(const State& s) const { return sup_grad(s.U) + sup_grad(s.B); }
    DiagRecord diag(const State& s) const { return diagnostics(s); }
    double data_norm(const State& s) const {
        DyadicDecomposition dec(s.grid());
        const BesovIndex idx{2.5, 2.0, 2.0};
        return besov_norm(s.R, idx, dec) + besov_norm(s.U, idx, dec) + besov_norm(s.B, idx, dec);
    }
};

struct ElsasserSystem {
    using State = ElsasserState;

    PhysParams params;

    State rhs(const State& s) const { return rhs_ideal_elsasser(s, params); }
    void postprocess(State& s) const {
        s.alpha = leray_project(s.alpha);
        s.beta = leray_project(s.beta);
    }
    double max_speed(const State& s) const {
        return norm_lp(s.alpha, kInf) + norm_lp(s.beta, kInf);
    }
    double max_diffusion(const State&) const { return 0.0; }
    double bkm_value(const State& s) const {
        const LimitState l = from_elsasser(s);
        return sup_grad(l.U) + sup_grad(l.B);
    }
    DiagRecord diag(const State& s) const { return diagnostics(s); }
    double data_norm(const State& s) const {
        DyadicDecomposition dec(s.grid());
        const BesovIndex idx{2.5, 2.0, 2.0};
        return besov_norm(s.R, idx, dec) + besov_norm(s.alpha, idx, dec) +
               besov_norm(s.beta, idx, dec);
    }
};

struct PrimitiveSystem {
    using State = PrimitiveState;

    PhysParams params;
    double pressure_tol = 1e-10;

    State rhs(const State& s) const { return rhs_primitive(s, params, pressure_tol); }
    void postprocess(State& s) const {
        s.u = leray_project(s.u);
        s.b = leray_project(s.b);
    }
    double max_speed(const State& s) const { return norm_lp(s.u, kInf) + norm_lp(s.b, kInf); }
    double max_diffusion(const State& s) const {
        const double h = params.h();
        if (h == 0.0) return 0.0;
        const double dev = params.eps * norm_lp(s.r, kInf);
        return h * std::max(params.nu(1.0 + dev), params.mu(1.0 + dev));
    }
    double bkm_value(const State& s) const { return sup_grad(s.u) + sup_grad(s.b); }
    DiagRecord diag(const State& s) const { return diagnostics(s, params); }
    double data_norm(const State& s) const {
        DyadicDecomposition dec(s.grid());
        const BesovIndex idx{2.5, 2.0, 2.0};
        return besov_norm(s.r, idx, dec) + besov_norm(s.u, idx, dec) + besov_norm(s.b, idx, dec);
    }
};

// ---------------------------------------------------------------------------
// stepping
// ---------------------------------------------------------------------------

template <typename System>
typename System::State rk4_combine(const System& sys, const typename System::State& y, double dt) {
    using State = typename System::State;
    State k1 = sys.rhs(y);
    State k2 = sys.rhs(y.scaled_sum(0.5 * dt, k1));
    State k3 = sys.rhs(y.scaled_sum(0.5 * dt, k2));
    State k4 = sys.rhs(y.scaled_sum(dt, k3));
    State out = y;
    out.axpy(dt / 6.0, k1);
    out.axpy(dt / 3.0, k2);
    out.axpy(dt / 3.0, k3);
    out.axpy(dt / 6.0, k4);
    return out;
}

// permissible step at the current state: advective CFL plus, for explicit
// diffusion, the parabolic bound
double cfl_limit(double spacing, double cfl, double max_speed, double max_diffusion);

// One classical RK4 update with post-step re-projection; throws BlowUpError when
// non-finite values appear.
template <typename System>
typename System::State step(const System& sys, const typename System::State& y, double dt,
                            double t_now = 0.0) {
    auto out = rk4_combine(sys, y, dt);
    sys.postprocess(out);
    if (!out.finite())
        throw BlowUpError("step: non-finite values after RK4 update", t_now);
    return out;
}

// Integrates to cfg.t_end, accumulating the BKM integral by trapezoid and
// recording one row per step.  Failures mark the trace instead of throwing;
// non-finite steps are retried with a halved (and thereafter kept) step, at
// most 10 rejections per step.
template <typename System>
RunTrace advance(const System& sys, typename System::State& state, const StepperConfig& cfg) {
    cfg.validate();
    RunTrace trace;
    const double dx = state.grid().spacing();

    if (!state.finite()) {
        trace.status = RunStatus::blow_up_suspected;
        trace.message = "non-finite initial data";
        trace.last_valid_time = 0.0;
        return trace;
    }

    const double dn = sys.data_norm(state);
    trace.lifespan_hint = dn > 0.0 ? 1.0 / dn : kInf;

    double t = 0.0;
    double bkm = 0.0;
    double bkm_prev = cfg.monitor_bkm ? sys.bkm_value(state) : 0.0;
    auto record = [&](double time) {
        DiagRecord d = sys.diag(state);
        TraceRow row;
        row.t = time;
        row.energy = d.energy;
        row.cross_helicity = d.cross_helicity;
        row.bkm_integral = bkm;
        trace.rows.push_back(row);
    };
    record(0.0);

    double shrink = 1.0;  // monotone rejection shrink factor
    while (t < cfg.t_end - 1e-14) {
        double dt = std::min({cfg.dt * shrink,
                              cfl_limit(dx, cfg.cfl, sys.max_speed(state), sys.max_diffusion(state)),
                              cfg.t_end - t});
        bool accepted = false;
        for (int rejections = 0; rejections <= 10; ++rejections) {
            typename System::State trial = state;
            try {
                trial = rk4_combine(sys, state, dt);
                sys.postprocess(trial);
            } catch (const std::runtime_error& e) {
                trace.status = RunStatus::solver_error;
                trace.message = e.what();
                trace.last_valid_time = t;
                return trace;
            }
            if (trial.finite()) {
                state = std::move(trial);
                accepted = true;
                break;
            }
            dt *= 0.5;
            shrink *= 0.5;
        }
        if (!accepted) {
            trace.status = RunStatus::blow_up_suspected;
            trace.message = "step rejected 10 times (non-finite update)";
            trace.last_valid_time = t;
            return trace;
        }
        t += dt;
        if (cfg.monitor_bkm) {
            const double bkm_now = sys.bkm_value(state);
            bkm += 0.5 * dt * (bkm_prev + bkm_now);
            bkm_prev = bkm_now;
        }
        record(t);
    }
    trace.last_valid_time = t;
    return trace;
}

}  // namespace qhmhd
