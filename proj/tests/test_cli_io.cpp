#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "qhmhd/config.hpp"
#include "qhmhd/trace_io.hpp"

using namespace qhmhd;

namespace {

const char* kGoodConfig = R"(
# comment line
[experiment]
system = primitive
n = 32
dt = 1e-3
cfl = 0.8
t_end = 0.5
seed = 42

[params]
eps = 0.05
h_family = power
h_exponent = 2.0
nu_family = holder
nu_floor = 0.05
nu_slope = 0.5
nu_gamma = 0.5
mu_family = constant
mu_floor = 0.07

[initial]
kind = random
band_lo = 1
band_hi = 5
amp_r = 0.2
amp_u = 0.3
amp_b = 0.1

[sweep]
scenario = ideal
eps_list = 0.1, 0.05, 0.025

[besov]
s = 1.5
p = 2
r = inf

[output]
dir = /tmp/qh_cli_io
)";

std::string strip_first_line(const std::string& s) {
    return s.substr(s.find('\n') + 1);
}

}  // namespace

TEST_CASE("config parsing: full round trip") {
    ExperimentConfig cfg = parse_config_text(kGoodConfig, "test.cfg");
    cfg.validate();
    CHECK(cfg.system == ExperimentConfig::SystemTag::primitive);
    CHECK(cfg.n == 32);
    CHECK(cfg.dt == doctest::Approx(1e-3));
    CHECK(cfg.seed == 42);
    CHECK(cfg.seed_set);
    CHECK(cfg.params.eps == doctest::Approx(0.05));
    CHECK(cfg.params.h_family == PhysParams::HFamily::power);
    CHECK(cfg.params.h_of(0.1) == doctest::Approx(0.01));
    CHECK(cfg.params.nu.family == CoefFunction::Family::holder);
    CHECK(cfg.params.nu(1.04) == doctest::Approx(0.05 + 0.5 * std::sqrt(0.04)));
    CHECK(cfg.params.mu(2.0) == doctest::Approx(0.07));
    CHECK(cfg.initial.band_hi == 5);
    CHECK(cfg.has_sweep);
    CHECK(cfg.scenario == Scenario::ideal);
    CHECK(cfg.eps_list == std::vector<double>{0.1, 0.05, 0.025});
    CHECK(cfg.besov.s == doctest::Approx(1.5));
    CHECK(cfg.besov.r == kInf);
    CHECK(cfg.out_dir == "/tmp/qh_cli_io");
}

TEST_CASE("config parsing: unknown keys are hard errors with line info") {
    const char* bad = "[experiment]\nn = 32\nwhatever = 3\n";
    try {
        (void)parse_config_text(bad, "bad.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.cfg:3") != std::string::npos);
        CHECK(msg.find("whatever") != std::string::npos);
    }

    CHECK_THROWS_AS((void)parse_config_text("[nope]\n", "x"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text("[experiment]\nn 32\n", "x"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text("n = 32\n", "x"), ConfigError);          // before section
    CHECK_THROWS_AS((void)parse_config_text("[experiment]\nn = abc\n", "x"), ConfigError);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = parse_config_text(kGoodConfig, "test.cfg");
    cfg.seed_set = false;  // random data without a seed
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = parse_config_text(kGoodConfig, "test.cfg");
    cfg.n = 9;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = parse_config_text(kGoodConfig, "test.cfg");
    cfg.eps_list = {0.05, 0.1};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("initial data generation contracts") {
    TorusGrid g(64);
    InitialSpec spec;
    spec.kind = InitialSpec::Kind::random;
    spec.seed = 11;
    spec.band_lo = 2;
    spec.band_hi = 8;
    spec.amp_r = 0.2;
    spec.amp_u = 0.4;
    spec.amp_b = 0.3;

    LimitState a = generate_limit_data(spec, g);
    LimitState b = generate_limit_data(spec, g);

    // determinism: identical seed gives bit-identical coefficient arrays
    CHECK(std::memcmp(a.U.x1().coeffs().data(), b.U.x1().coeffs().data(),
                      g.points() * sizeof(std::complex<double>)) == 0);
    CHECK(std::memcmp(a.R.coeffs().data(), b.R.coeffs().data(),
                      g.points() * sizeof(std::complex<double>)) == 0);

    // divergence-free and sup-normalised
    CHECK(norm_l2_spectral(divergence(a.U)) <= 1e-12 * norm_l2_spectral(a.U));
    CHECK(norm_l2_spectral(divergence(a.B)) <= 1e-12 * norm_l2_spectral(a.B));
    CHECK(norm_lp(a.U, kInf) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(norm_lp(a.R, kInf) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(std::abs(a.U.x1().mean()) < 1e-15);

    // different seed changes the fields
    spec.seed = 12;
    LimitState c = generate_limit_data(spec, g);
    CHECK(norm_l2_spectral(c.U - a.U) > 1e-3);

    // zero amplitude gives zero fields
    spec.amp_u = 0.0;
    LimitState z = generate_limit_data(spec, g);
    CHECK(norm_lp(z.U, kInf) == 0.0);

    // band above the dealiasing cutoff is a config error
    spec.band_hi = 30;
    CHECK_THROWS_AS((void)generate_limit_data(spec, g), ConfigError);
}

TEST_CASE("trace CSV is deterministic after the timestamp line") {
    RunTrace tr;
    for (int i = 0; i < 5; ++i) {
        TraceRow row;
        row.t = 1e-3 * i;
        row.energy = std::sqrt(2.0) + i;
        row.cross_helicity = -1.0 / (i + 3.0);
        row.bkm_integral = 0.1 * i;
        row.jterms = {1e-17, 2.0, -3.5, 4.0 / 3.0, 0.0, 1e300};
        row.residual = -1e-12;
        tr.rows.push_back(row);
    }
    const std::string a = trace_csv(tr);
    const std::string b = trace_csv(tr);
    CHECK(strip_first_line(a) == strip_first_line(b));
    CHECK(a.substr(0, 13) == "# qhmhd trace");

    // header and 17-significant-digit payload
    const std::string body = strip_first_line(a);
    CHECK(body.find("t,energy,cross_helicity,bkm_integral,entropy,dissipation,"
                    "J1,J2,J3,J4,J5,J6,residual\n") == 0);
    CHECK(body.find("1.3333333333333333") != std::string::npos);
}

TEST_CASE("checkpoint round trip is bit-exact") {
    namespace fs = std::filesystem;
    TorusGrid g(32);
    InitialSpec spec;
    spec.kind = InitialSpec::Kind::random;
    spec.seed = 99;
    spec.band_hi = 6;
    spec.amp_r = 0.3;
    spec.amp_u = 0.5;
    spec.amp_b = 0.2;
    PrimitiveState p = generate_primitive_data(spec, g);

    const std::string path = (fs::temp_directory_path() / "qhmhd_ck_test.qhk").string();
    save_checkpoint(path, make_checkpoint(p, 1.25, 99));
    Checkpoint ck = load_checkpoint(path);
    CHECK(ck.system == "primitive");
    CHECK(ck.n == 32);
    CHECK(ck.time == 1.25);
    CHECK(ck.seed == 99);

    PrimitiveState q = primitive_from_checkpoint(ck);
    CHECK(std::memcmp(p.r.coeffs().data(), q.r.coeffs().data(),
                      g.points() * sizeof(std::complex<double>)) == 0);
    CHECK(std::memcmp(p.u.x1().coeffs().data(), q.u.x1().coeffs().data(),
                      g.points() * sizeof(std::complex<double>)) == 0);
    CHECK(std::memcmp(p.b.x2().coeffs().data(), q.b.x2().coeffs().data(),
                      g.points() * sizeof(std::complex<double>)) == 0);

    CHECK_THROWS(limit_from_checkpoint(ck));  // wrong system tag
    fs::remove(path);
}

TEST_CASE("end-to-end determinism of a short run") {
    TorusGrid g(32);
    PhysParams params;
    params.eps = 0.1;
    params.nu = CoefFunction{CoefFunction::Family::constant, 0.05, 0.0, 1.0};
    params.mu = CoefFunction{CoefFunction::Family::constant, 0.05, 0.0, 1.0};

    auto run_once = [&]() {
        InitialSpec spec;
        spec.kind = InitialSpec::Kind::random;
        spec.seed = 5;
        spec.band_hi = 4;
        spec.amp_r = 0.2;
        spec.amp_u = 0.3;
        spec.amp_b = 0.3;
        LimitState s = generate_limit_data(spec, g);
        LimitSystem sys{params, true};
        StepperConfig cfg;
        cfg.dt = 2e-3;
        cfg.t_end = 0.1;
        RunTrace tr = advance(sys, s, cfg);
        return strip_first_line(trace_csv(tr));
    };
    CHECK(run_once() == run_once());
}
