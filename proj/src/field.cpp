#include "qhmhd/field.hpp"

#include <cmath>
#include <stdexcept>

namespace qhmhd {

ScalarField::ScalarField(const TorusGrid& grid) : grid_(grid), coeffs_(grid.points()) {}

ScalarField::ScalarField(const TorusGrid& grid, std::vector<std::complex<double>> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.points())
        throw std::invalid_argument("ScalarField: coefficient array size does not match grid");
}

ScalarField ScalarField::from_physical(const TorusGrid& grid, std::span<const double> values) {
    if (values.size() != grid.points())
        throw std::invalid_argument("ScalarField::from_physical: sample count does not match grid");
    ScalarField f(grid);
    fft::forward(grid, values.data(), f.coeffs_.data());
    return f;
}

std::vector<double> ScalarField::to_physical() const {
    std::vector<double> v(grid_.points());
    fft::inverse(grid_, coeffs_.data(), v.data());
    return v;
}

namespace {
inline int index_of(const TorusGrid& g, int k) {
    const int n = g.size();
    if (k < -n / 2 + 1 || k > n / 2)
        throw std::out_of_range("wavenumber outside grid lattice");
    return k >= 0 ? k : k + n;
}
}  // namespace

std::complex<double> ScalarField::coeff_at(int k1, int k2) const {
    return coeffs_[static_cast<std::size_t>(index_of(grid_, k1)) * grid_.size() + index_of(grid_, k2)];
}

void ScalarField::set_coeff(int k1, int k2, std::complex<double> c) {
    coeffs_[static_cast<std::size_t>(index_of(grid_, k1)) * grid_.size() + index_of(grid_, k2)] = c;
}

bool ScalarField::finite() const {
    for (const auto& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    require_same_grid(grid_, o.grid_, "ScalarField::operator+=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    require_same_grid(grid_, o.grid_, "ScalarField::operator-=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double a) {
    for (auto& c : coeffs_) c *= a;
    return *this;
}

void ScalarField::axpy(double a, const ScalarField& o) {
    require_same_grid(grid_, o.grid_, "ScalarField::axpy");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * o.coeffs_[i];
}

VectorField::VectorField(ScalarField x1, ScalarField x2) : x1_(std::move(x1)), x2_(std::move(x2)) {
    require_same_grid(x1_.grid(), x2_.grid(), "VectorField");
}

VectorField& VectorField::operator+=(const VectorField& o) {
    x1_ += o.x1_;
    x2_ += o.x2_;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    x1_ -= o.x1_;
    x2_ -= o.x2_;
    return *this;
}

VectorField& VectorField::operator*=(double a) {
    x1_ *= a;
    x2_ *= a;
    return *this;
}

void VectorField::axpy(double a, const VectorField& o) {
    x1_.axpy(a, o.x1_);
    x2_.axpy(a, o.x2_);
}

}  // namespace qhmhd
