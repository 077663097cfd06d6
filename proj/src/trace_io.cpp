#include "qhmhd/trace_io.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace qhmhd {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
}

}  // namespace

std::string trace_csv(const RunTrace& trace) {
    std::ostringstream out;
    out << "# qhmhd trace " << timestamp() << "\n";
    out << "t,energy,cross_helicity,bkm_integral,entropy,dissipation,J1,J2,J3,J4,J5,J6,residual\n";
    for (const auto& r : trace.rows) {
        out << fmt17(r.t) << ',' << fmt17(r.energy) << ',' << fmt17(r.cross_helicity) << ','
            << fmt17(r.bkm_integral) << ',' << fmt17(r.entropy) << ',' << fmt17(r.dissipation);
        for (double j : r.jterms) out << ',' << fmt17(j);
        out << ',' << fmt17(r.residual) << '\n';
    }
    return out.str();
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
    write_text(path, trace_csv(trace));
}

void write_run_summary_json(const std::string& path, const ExperimentConfig& cfg,
                            const RunTrace& trace, const DiagRecord& final_diag) {
    nlohmann::json j;
    j["system"] = to_string(cfg.system);
    j["n"] = cfg.n;
    j["dt"] = cfg.dt;
    j["cfl"] = cfg.cfl;
    j["t_end"] = cfg.t_end;
    j["seed"] = cfg.seed;
    j["status"] = to_string(trace.status);
    j["message"] = trace.message;
    j["last_valid_time"] = trace.last_valid_time;
    j["lifespan_hint"] = trace.lifespan_hint;
    j["bkm_integral"] = trace.bkm_integral();
    j["final"]["energy"] = final_diag.energy;
    j["final"]["cross_helicity"] = final_diag.cross_helicity;
    for (const auto& [p, v] : final_diag.density_lp)
        j["final"]["density_lp"][p == kInf ? "inf" : fmt17(p)] = v;
    write_text(path, j.dump(2) + "\n");
}

void write_sweep_json(const std::string& path, const SweepResult& res, Scenario scenario) {
    nlohmann::json j;
    j["scenario"] = scenario == Scenario::viscous ? "viscous" : "ideal";
    j["eps"] = res.eps_values;
    j["sup_entropy"] = res.sup_entropy;
    j["bounds"] = res.bounds;
    j["slope"] = res.slope;
    j["intercept"] = res.intercept;
    j["theoretical_exponent"] = res.exponent_expected;
    j["data_constant_M"] = res.data_constant_M;
    j["pass"] = res.pass;
    j["message"] = res.message;
    write_text(path, j.dump(2) + "\n");
}

void write_sweep_csv(const std::string& path, const SweepResult& res) {
    std::ostringstream out;
    out << "eps,sup_entropy,bound\n";
    for (std::size_t i = 0; i < res.eps_values.size(); ++i)
        out << fmt17(res.eps_values[i]) << ',' << fmt17(res.sup_entropy[i]) << ','
            << fmt17(res.bounds[i]) << '\n';
    write_text(path, out.str());
}

// ---------------------------------------------------------------------------
// checkpoints
// ---------------------------------------------------------------------------

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
    nlohmann::json j;
    j["magic"] = "qhmhd-checkpoint-v1";
    j["system"] = ck.system;
    j["n"] = ck.n;
    j["time"] = ck.time;
    j["seed"] = ck.seed;
    j["fields"] = ck.field_names;
    j["layout"] = "complex128-rowmajor";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump() << '\n';
    for (const auto& f : ck.fields)
        out.write(reinterpret_cast<const char*>(f.data()),
                  static_cast<std::streamsize>(f.size() * sizeof(std::complex<double>)));
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("checkpoint '" + path + "' is empty");
    nlohmann::json j = nlohmann::json::parse(header);
    if (j.value("magic", "") != "qhmhd-checkpoint-v1")
        throw std::runtime_error("checkpoint '" + path + "' has an unknown header");

    Checkpoint ck;
    ck.system = j.at("system").get<std::string>();
    ck.n = j.at("n").get<int>();
    ck.time = j.at("time").get<double>();
    ck.seed = j.at("seed").get<std::uint64_t>();
    ck.field_names = j.at("fields").get<std::vector<std::string>>();

    const std::size_t m = static_cast<std::size_t>(ck.n) * ck.n;
    for (std::size_t i = 0; i < ck.field_names.size(); ++i) {
        std::vector<std::complex<double>> data(m);
        in.read(reinterpret_cast<char*>(data.data()),
                static_cast<std::streamsize>(m * sizeof(std::complex<double>)));
        if (!in) throw std::runtime_error("checkpoint '" + path + "' truncated");
        ck.fields.push_back(std::move(data));
    }
    return ck;
}

namespace {

std::vector<std::complex<double>> copy_coeffs(const ScalarField& f) {
    return std::vector<std::complex<double>>(f.coeffs().begin(), f.coeffs().end());
}

ScalarField field_from(const TorusGrid& g, const std::vector<std::complex<double>>& c) {
    return ScalarField(g, c);
}

}  // namespace

Checkpoint make_checkpoint(const PrimitiveState& s, double time, std::uint64_t seed) {
    return Checkpoint{"primitive", s.grid().size(), time, seed,
                      {"r", "u1", "u2", "b1", "b2"},
                      {copy_coeffs(s.r), copy_coeffs(s.u.x1()), copy_coeffs(s.u.x2()),
                       copy_coeffs(s.b.x1()), copy_coeffs(s.b.x2())}};
}

Checkpoint make_checkpoint(const LimitState& s, double time, std::uint64_t seed) {
    return Checkpoint{"limit", s.grid().size(), time, seed,
                      {"R", "U1", "U2", "B1", "B2"},
                      {copy_coeffs(s.R), copy_coeffs(s.U.x1()), copy_coeffs(s.U.x2()),
                       copy_coeffs(s.B.x1()), copy_coeffs(s.B.x2())}};
}

Checkpoint make_checkpoint(const ElsasserState& s, double time, std::uint64_t seed) {
    return Checkpoint{"elsasser", s.grid().size(), time, seed,
                      {"R", "alpha1", "alpha2", "beta1", "beta2"},
                      {copy_coeffs(s.R), copy_coeffs(s.alpha.x1()), copy_coeffs(s.alpha.x2()),
                       copy_coeffs(s.beta.x1()), copy_coeffs(s.beta.x2())}};
}

namespace {

void check_fields(const Checkpoint& ck, const char* system) {
    if (ck.system != system)
        throw std::runtime_error("checkpoint holds a '" + ck.system + "' state, expected '" +
                                 system + "'");
    if (ck.fields.size() != 5) throw std::runtime_error("checkpoint has wrong field count");
}

}  // namespace

PrimitiveState primitive_from_checkpoint(const Checkpoint& ck) {
    check_fields(ck, "primitive");
    TorusGrid g(ck.n);
    return PrimitiveState(field_from(g, ck.fields[0]),
                          VectorField(field_from(g, ck.fields[1]), field_from(g, ck.fields[2])),
                          VectorField(field_from(g, ck.fields[3]), field_from(g, ck.fields[4])));
}

LimitState limit_from_checkpoint(const Checkpoint& ck) {
    check_fields(ck, "limit");
    TorusGrid g(ck.n);
    return LimitState(field_from(g, ck.fields[0]),
                      VectorField(field_from(g, ck.fields[1]), field_from(g, ck.fields[2])),
                      VectorField(field_from(g, ck.fields[3]), field_from(g, ck.fields[4])));
}

ElsasserState elsasser_from_checkpoint(const Checkpoint& ck) {
    check_fields(ck, "elsasser");
    TorusGrid g(ck.n);
    return ElsasserState(field_from(g, ck.fields[0]),
                         VectorField(field_from(g, ck.fields[1]), field_from(g, ck.fields[2])),
                         VectorField(field_from(g, ck.fields[3]), field_from(g, ck.fields[4])));
}

}  // namespace qhmhd
