#pragma once

#include <stdexcept>
#include <string>

namespace qhmhd {

struct GridMismatchError : std::invalid_argument {
    explicit GridMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

struct MeanViolationError : std::invalid_argument {
    explicit MeanViolationError(const std::string& what) : std::invalid_argument(what) {}
};

struct ResolutionError : std::invalid_argument {
    explicit ResolutionError(const std::string& what) : std::invalid_argument(what) {}
};

struct DegenerateInputError : std::invalid_argument {
    explicit DegenerateInputError(const std::string& what) : std::invalid_argument(what) {}
};

struct VacuumError : std::runtime_error {
    explicit VacuumError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative elliptic solve failed to reach tolerance within the iteration cap.
struct EllipticSolverError : std::runtime_error {
    EllipticSolverError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual(residual), iterations(iterations) {}
    double residual;
    int iterations;
};

// Non-finite values appeared during time stepping.
struct BlowUpError : std::runtime_error {
    BlowUpError(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time(last_valid_time) {}
    double last_valid_time;
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qhmhd
