#pragma once

#include <string>

#include "qhmhd/config.hpp"
#include "qhmhd/entropy.hpp"

namespace qhmhd {

// Fixed-order trace CSV: one timestamp comment line, one header line, then
// rows "t,energy,cross_helicity,bkm_integral,entropy,dissipation,J1..J6,residual"
// in decimal text with 17 significant digits.  Everything after the first line
// is a deterministic function of the trace.
std::string trace_csv(const RunTrace& trace);
void write_trace_csv(const std::string& path, const RunTrace& trace);

void write_run_summary_json(const std::string& path, const ExperimentConfig& cfg,
                            const RunTrace& trace, const DiagRecord& final_diag);

// sweep_result.json plus the plot-ready "eps,sup_entropy,bound" CSV
void write_sweep_json(const std::string& path, const SweepResult& res, Scenario scenario);
void write_sweep_csv(const std::string& path, const SweepResult& res);

// Checkpoint container: one JSON header line (grid size, system tag, time,
// seed, field list), a newline, then the named fields as raw little-endian
// complex<double> coefficient arrays in header order.
struct Checkpoint {
    std::string system;
    int n = 0;
    double time = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> field_names;
    std::vector<std::vector<std::complex<double>>> fields;
};

void save_checkpoint(const std::string& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::string& path);

Checkpoint make_checkpoint(const PrimitiveState& s, double time, std::uint64_t seed);
Checkpoint make_checkpoint(const LimitState& s, double time, std::uint64_t seed);
Checkpoint make_checkpoint(const ElsasserState& s, double time, std::uint64_t seed);

PrimitiveState primitive_from_checkpoint(const Checkpoint& ck);
LimitState limit_from_checkpoint(const Checkpoint& ck);
ElsasserState elsasser_from_checkpoint(const Checkpoint& ck);

}  // namespace qhmhd
