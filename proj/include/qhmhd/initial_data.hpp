#pragma once

#include <cstdint>
#include <random>

#include "qhmhd/params.hpp"
#include "qhmhd/spectral_ops.hpp"
#include "qhmhd/states.hpp"

namespace qhmhd {

// Deterministic random source: mt19937_64 with explicit uniform/Gaussian maps,
// so identical seeds give bit-identical fields on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double gauss() {  // Box-Muller
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return mag * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct InitialSpec {
    enum class Kind { zero, random, taylor_green, shear };
    Kind kind = Kind::random;
    int band_lo = 1;  // radius band for random modes, 1 <= lo <= hi <= n/3
    int band_hi = 4;
    double amp_r = 0.0;  // sup-norm amplitudes, enforced by post-normalisation
    double amp_u = 0.0;
    double amp_b = 0.0;
    std::uint64_t seed = 0;
};

// Band-limited random scalar with Hermitian coefficients, mean-free, sup norm
// normalised to amplitude.
ScalarField random_scalar(Rng& rng, const TorusGrid& grid, int band_lo, int band_hi,
                          double amplitude);

// Leray projection of a random pair; divergence-free to spectral precision,
// sup norm of the magnitude normalised to amplitude.
VectorField random_divergence_free(Rng& rng, const TorusGrid& grid, int band_lo, int band_hi,
                                   double amplitude);

LimitState generate_limit_data(const InitialSpec& spec, const TorusGrid& grid);
PrimitiveState generate_primitive_data(const InitialSpec& spec, const TorusGrid& grid);
ElsasserState generate_elsasser_data(const InitialSpec& spec, const TorusGrid& grid);

}  // namespace qhmhd
