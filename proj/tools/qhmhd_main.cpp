// Command-line front end: run / sweep / besov / check.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 property-suite failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "qhmhd/config.hpp"
#include "qhmhd/trace_io.hpp"

namespace fs = std::filesystem;
using namespace qhmhd;

namespace {

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
    int resolution = 0;
};

ExperimentConfig load_config(const Overrides& ov) {
    ExperimentConfig cfg = parse_config_file(ov.config_path);
    if (ov.seed_set) {
        cfg.seed = ov.seed;
        cfg.seed_set = true;
    }
    if (ov.resolution > 0) cfg.n = ov.resolution;
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    cfg.initial.seed = cfg.seed;
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    return cfg;
}

int cmd_run(const Overrides& ov) {
    ExperimentConfig cfg = load_config(ov);
    TorusGrid grid(cfg.n);
    const StepperConfig stepper = cfg.stepper();
    RunTrace trace;
    DiagRecord final_diag;
    Checkpoint final_ck;

    switch (cfg.system) {
        case ExperimentConfig::SystemTag::primitive: {
            PrimitiveState s = generate_primitive_data(cfg.initial, grid);
            PrimitiveSystem sys{cfg.params};
            trace = advance(sys, s, stepper);
            final_diag = sys.diag(s);
            final_ck = make_checkpoint(s, trace.last_valid_time, cfg.seed);
            break;
        }
        case ExperimentConfig::SystemTag::viscous_limit:
        case ExperimentConfig::SystemTag::ideal_limit: {
            LimitState s = generate_limit_data(cfg.initial, grid);
            LimitSystem sys{cfg.params,
                            cfg.system == ExperimentConfig::SystemTag::viscous_limit};
            trace = advance(sys, s, stepper);
            final_diag = sys.diag(s);
            final_ck = make_checkpoint(s, trace.last_valid_time, cfg.seed);
            break;
        }
        case ExperimentConfig::SystemTag::elsasser: {
            ElsasserState s = generate_elsasser_data(cfg.initial, grid);
            ElsasserSystem sys{cfg.params};
            trace = advance(sys, s, stepper);
            final_diag = sys.diag(s);
            final_ck = make_checkpoint(s, trace.last_valid_time, cfg.seed);
            break;
        }
    }

    write_trace_csv((fs::path(cfg.out_dir) / "trace.csv").string(), trace);
    write_run_summary_json((fs::path(cfg.out_dir) / "summary.json").string(), cfg, trace,
                           final_diag);
    save_checkpoint((fs::path(cfg.out_dir) / "final_state.qhk").string(), final_ck);

    std::cout << "run: status=" << to_string(trace.status) << " t=" << trace.last_valid_time
              << " bkm=" << trace.bkm_integral() << " out=" << cfg.out_dir << "\n";
    return trace.status == RunStatus::completed ? 0 : 2;
}

int cmd_sweep(const Overrides& ov) {
    ExperimentConfig cfg = load_config(ov);
    if (!cfg.has_sweep || cfg.eps_list.size() < 2)
        throw ConfigError("sweep requires a [sweep] section with scenario and eps_list");
    TorusGrid grid(cfg.n);
    LimitState data = generate_limit_data(cfg.initial, grid);

    SweepResult res = run_sweep(cfg.params, cfg.scenario, cfg.eps_list, data, cfg.stepper(),
                                ov.workers);

    write_sweep_json((fs::path(cfg.out_dir) / "sweep_result.json").string(), res, cfg.scenario);
    write_sweep_csv((fs::path(cfg.out_dir) / "sweep.csv").string(), res);
    for (std::size_t i = 0; i < res.eps_values.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "trace_eps_%g.csv", res.eps_values[i]);
        write_trace_csv((fs::path(cfg.out_dir) / name).string(), res.run_traces[i]);
    }

    std::cout << "sweep: slope=" << res.slope << " expected=" << res.exponent_expected
              << " pass=" << (res.pass ? "yes" : "no");
    if (!res.message.empty()) std::cout << " (" << res.message << ")";
    std::cout << " out=" << cfg.out_dir << "\n";

    for (const auto& tr : res.run_traces)
        if (tr.status != RunStatus::completed) return 2;
    return 0;
}

int cmd_besov(const Overrides& ov) {
    ExperimentConfig cfg = load_config(ov);
    TorusGrid grid(cfg.n);
    LimitState data = generate_limit_data(cfg.initial, grid);
    // analyse the density component when present, otherwise the vorticity
    ScalarField field = norm_lp(data.R, kInf) > 0.0 ? data.R : curl2(data.U);

    DyadicDecomposition dec(grid);
    std::ostringstream csv;
    csv << "j,block_lp_norm,weight,contribution\n";
    std::vector<double> terms;
    for (int j = -1; j <= dec.jmax(); ++j) {
        const double bn = norm_lp(dec.block(field, j), cfg.besov.p);
        const double w = std::pow(2.0, j * cfg.besov.s);
        csv << j << ',' << bn << ',' << w << ',' << w * bn << '\n';
        terms.push_back(w * bn);
    }
    const double total = besov_norm(field, cfg.besov, dec);
    csv << "total,,," << total << '\n';

    std::cout << csv.str();
    std::ofstream out(fs::path(cfg.out_dir) / "besov.csv");
    out << csv.str();
    return 0;
}

// built-in property suites: spectral identities, formulation equivalence,
// conservation, entropy bookkeeping
int cmd_check(int resolution) {
    const int n = resolution > 0 ? resolution : 64;
    TorusGrid grid(n);
    int failures = 0;
    auto report = [&](const char* name, bool ok, double value) {
        std::printf("%-34s %s (%.3e)\n", name, ok ? "PASS" : "FAIL", value);
        if (!ok) ++failures;
    };

    PhysParams params;
    params.eps = 0.1;
    params.nu = CoefFunction{CoefFunction::Family::constant, 0.05, 0.0, 1.0};
    params.mu = CoefFunction{CoefFunction::Family::constant, 0.05, 0.0, 1.0};

    {  // Leray projection identities
        Rng rng(1);
        double worst_div = 0.0, worst_proj = 0.0;
        for (int t = 0; t < 20; ++t) {
            VectorField v(random_scalar(rng, grid, 1, n / 4, 1.0),
                          random_scalar(rng, grid, 1, n / 4, 1.0));
            VectorField pv = leray_project(v);
            const double scale = norm_l2_spectral(v);
            worst_div = std::max(worst_div, norm_l2_spectral(divergence(pv)) / scale);
            worst_proj =
                std::max(worst_proj, norm_l2_spectral(leray_project(pv) - pv) / scale);
        }
        report("leray divergence-free", worst_div <= 1e-12, worst_div);
        report("leray idempotent", worst_proj <= 1e-10, worst_proj);
    }

    {  // partition of unity
        DyadicDecomposition dec(grid);
        double worst = 0.0;
        for (int k = 0; k <= static_cast<int>(dec.resolved_radius()); ++k) {
            double sum = 0.0;
            for (int j = -1; j <= dec.jmax(); ++j) sum += dec.block_weight(j, double(k));
            worst = std::max(worst, std::abs(sum - 1.0));
        }
        report("dyadic partition of unity", worst <= 1e-10, worst);
    }

    {  // formulation equivalence at the RHS level
        InitialSpec spec;
        spec.kind = InitialSpec::Kind::random;
        spec.seed = 2;
        spec.band_hi = 5;
        spec.amp_r = spec.amp_u = spec.amp_b = 0.3;
        LimitState s = generate_limit_data(spec, grid);
        ElsasserState lhs = to_elsasser(rhs_ideal_original(s, params));
        ElsasserState rhs = rhs_ideal_elsasser(to_elsasser(s), params);
        const double err = norm_l2_spectral(lhs.alpha - rhs.alpha) +
                           norm_l2_spectral(lhs.beta - rhs.beta) +
                           norm_l2_spectral(lhs.R - rhs.R);
        report("formulation equivalence", err <= 1e-8, err);
    }

    {  // ideal conservation over a short run
        InitialSpec spec;
        spec.kind = InitialSpec::Kind::random;
        spec.seed = 3;
        spec.band_hi = 4;
        spec.amp_r = spec.amp_u = spec.amp_b = 0.25;
        LimitState s = generate_limit_data(spec, grid);
        LimitSystem sys{params, false};
        const double e0 = sys.diag(s).energy;
        StepperConfig cfg;
        cfg.dt = 2e-3;
        cfg.t_end = 0.1;
        RunTrace trace = advance(sys, s, cfg);
        const double drift = std::abs(sys.diag(s).energy - e0) / e0;
        report("ideal energy conservation", trace.status == RunStatus::completed && drift <= 1e-8,
               drift);
    }

    {  // remainder bookkeeping
        InitialSpec sp;
        sp.kind = InitialSpec::Kind::random;
        sp.seed = 4;
        sp.band_hi = 5;
        sp.amp_r = sp.amp_u = sp.amp_b = 0.3;
        PrimitiveState p = generate_primitive_data(sp, grid);
        sp.seed = 5;
        LimitState l = generate_limit_data(sp, grid);
        RemainderReport rep = remainder_report(p, l, params, Scenario::viscous);
        const double gap = std::abs(rep.sum() - rep.unexpanded);
        report("remainder J-term accounting", gap <= 1e-8, gap);
    }

    return failures == 0 ? 0 : 3;
}

}  // namespace

const char* kConfigReference = R"(configuration file keys (flat INI; unknown keys are hard errors):
  [experiment] system = primitive|viscous-limit|ideal-limit|elsasser
               n = <even grid size >= 8>   dt, cfl, t_end = <reals>
               seed = <uint64; mandatory for random initial data>
  [params]     eps = <Rossby number > 0>
               h_family = constant|power|zero   h_exponent = <a in h(eps)=eps^a>
               nu_family, mu_family = constant|affine|holder
               nu_floor, nu_slope, nu_gamma (and mu_*) = <coefficient data:
                 constant: floor; affine: floor + slope|rho-1|;
                 holder: floor + slope|rho-1|^gamma>
  [initial]    kind = zero|random|taylor-green|shear
               band_lo, band_hi = <radius band, 1 <= lo <= hi <= n/3>
               amp_r, amp_u, amp_b = <sup-norm amplitudes>
  [sweep]      scenario = viscous|ideal   eps_list = <comma separated, decreasing>
  [besov]      s, p, r = <Besov index; p, r accept 'inf'>
  [output]     dir = <output directory>)";

int main(int argc, char** argv) {
    CLI::App app{"2-D periodic pseudo-spectral solver suite for rotating quasi-homogeneous MHD"};
    app.footer(kConfigReference);
    app.require_subcommand(1);

    Overrides ov;
    int check_resolution = 0;

    auto add_common = [&](CLI::App* sub, bool need_config) {
        if (need_config)
            sub->add_option("--config", ov.config_path, "configuration file")->required();
        sub->add_option("--out", ov.out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--seed", ov.seed, "seed override")->each([&](const std::string&) {
            ov.seed_set = true;
        });
        sub->add_option("--workers", ov.workers, "bound on concurrent sweep runs");
        sub->add_option("--resolution", ov.resolution, "grid override");
    };

    CLI::App* run = app.add_subcommand("run", "integrate one system and emit trace/summary");
    add_common(run, true);
    CLI::App* sweep = app.add_subcommand("sweep", "eps-sweep rate experiment");
    add_common(sweep, true);
    CLI::App* besov = app.add_subcommand("besov", "per-block Besov norm report");
    add_common(besov, true);
    CLI::App* check = app.add_subcommand("check", "built-in property suites");
    check->add_option("--resolution", check_resolution, "grid for the property suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(ov);
        if (sweep->parsed()) return cmd_sweep(ov);
        if (besov->parsed()) return cmd_besov(ov);
        if (check->parsed()) return cmd_check(check_resolution);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
