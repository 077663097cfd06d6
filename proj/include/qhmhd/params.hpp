#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "qhmhd/field.hpp"

namespace qhmhd {

// Viscosity/resistivity coefficient as a function of density, restricted to the
// closed-form families whose modulus of continuity is known exactly:
//   constant:  nu(rho) = floor
//   affine:    nu(rho) = floor + slope*|rho-1|         sigma(z) = slope*z
//   holder:    nu(rho) = floor + slope*|rho-1|^gamma   sigma(z) = slope*z^gamma
struct CoefFunction {
    enum class Family { constant, affine, holder };

    Family family = Family::constant;
    double floor_value = 1.0;  // non-degeneracy floor, must stay > 0
    double slope = 0.0;
    double gamma = 1.0;  // Holder exponent in (0,1]

    double operator()(double rho) const {
        switch (family) {
            case Family::constant: return floor_value;
            case Family::affine: return floor_value + slope * std::abs(rho - 1.0);
            case Family::holder: return floor_value + slope * std::pow(std::abs(rho - 1.0), gamma);
        }
        return floor_value;
    }

    // modulus of continuity sigma with |nu(x+y)-nu(x)| <= sigma(|y|)
    double sigma(double z) const {
        switch (family) {
            case Family::constant: return 0.0;
            case Family::affine: return slope * z;
            case Family::holder: return slope * std::pow(z, gamma);
        }
        return 0.0;
    }

    bool differentiable() const { return family == Family::constant || family == Family::affine; }

    void validate() const {
        if (floor_value <= 0.0) throw std::invalid_argument("coefficient floor must be positive");
        if (family == Family::holder && (gamma <= 0.0 || gamma > 1.0))
            throw std::invalid_argument("Holder exponent must lie in (0,1]");
        if (slope < 0.0) throw std::invalid_argument("coefficient slope must be nonnegative");
    }
};

struct Mat2 {
    double a11, a12, a21, a22;
};

// Rotation matrix of the Coriolis term; c*v = v_perp.
inline constexpr Mat2 kRotation{0.0, -1.0, 1.0, 0.0};

struct PhysParams {
    enum class HFamily { constant_one, power, zero };

    double eps = 1.0;  // Rossby number, > 0
    HFamily h_family = HFamily::constant_one;
    double h_exponent = 1.0;  // h(eps) = eps^a for the power family
    CoefFunction nu, mu;
    Mat2 rotation = kRotation;

    double h() const { return h_of(eps); }
    double h_of(double e) const {
        switch (h_family) {
            case HFamily::constant_one: return 1.0;
            case HFamily::power: return std::pow(e, h_exponent);
            case HFamily::zero: return 0.0;
        }
        return 1.0;
    }

    void validate() const {
        if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
        if (h_family == HFamily::power && h_exponent <= 0.0)
            throw std::invalid_argument("h exponent must be positive");
        nu.validate();
        mu.validate();
    }
};

inline VectorField apply_matrix(const Mat2& m, const VectorField& v) {
    ScalarField c1 = m.a11 * v.x1() + m.a12 * v.x2();
    ScalarField c2 = m.a21 * v.x1() + m.a22 * v.x2();
    return VectorField(std::move(c1), std::move(c2));
}

}  // namespace qhmhd
