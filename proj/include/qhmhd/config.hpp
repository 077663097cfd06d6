#pragma once

#include <string>
#include <vector>

#include "qhmhd/entropy.hpp"
#include "qhmhd/initial_data.hpp"

namespace qhmhd {

// Flat sectioned key-value configuration.  Unknown sections or keys are hard
// errors with file/line diagnostics.
struct ExperimentConfig {
    enum class SystemTag { primitive, viscous_limit, ideal_limit, elsasser };

    SystemTag system = SystemTag::viscous_limit;
    int n = 64;
    double dt = 1e-3;
    double cfl = 0.9;
    double t_end = 1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;

    PhysParams params;
    InitialSpec initial;

    bool has_sweep = false;
    Scenario scenario = Scenario::viscous;
    std::vector<double> eps_list;

    BesovIndex besov{2.0, 2.0, 2.0};

    std::string out_dir = "out";

    StepperConfig stepper() const {
        StepperConfig c;
        c.dt = dt;
        c.cfl = cfl;
        c.t_end = t_end;
        return c;
    }

    void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text, const std::string& source_name);
ExperimentConfig parse_config_file(const std::string& path);

const char* to_string(ExperimentConfig::SystemTag tag);

}  // namespace qhmhd
