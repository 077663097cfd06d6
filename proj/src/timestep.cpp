#include "qhmhd/timestep.hpp"

namespace qhmhd {

double cfl_limit(double spacing, double cfl, double max_speed, double max_diffusion) {
    double dt = cfl * spacing / (max_speed + 1e-8);
    if (max_diffusion > 0.0) dt = std::min(dt, cfl * spacing * spacing / (2.0 * max_diffusion));
    return dt;
}

}  // namespace qhmhd
