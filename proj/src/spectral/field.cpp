/*
 * Copyright 2026 The hwave authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */

#include "hwave/spectral/field.hpp"

#include <cmath>
#include <string>

#include "hwave/core/error.hpp"
#include "hwave/kernels/kernels.hpp"

namespace hwave {

void GridSpec::validate() const {
    if (n < 1 || n > 4)
        throw ParameterError("grid dimension n must be in [1, 4], got " + std::to_string(n));
    if (points < 8 || (points & (points - 1)) != 0)
        throw ParameterError("points_per_axis must be a power of two >= 8, got " +
                             std::to_string(points));
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ParameterError("half_width must be positive and finite");
    double total = 1.0;
    for (int i = 0; i < n; ++i) total *= points;
    if (total > static_cast<double>(kMaxGridSize))
        throw ParameterError("grid size N^n exceeds the run budget");
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b)) throw GridMismatch(std::string(what) + ": fields live on different grids");
}

namespace {

template <class V>
bool all_finite(const V& v) {
    for (const auto& x : v)
        if (!std::isfinite(std::abs(x))) return false;
    return true;
}

}  // namespace

void require_finite(const ComplexField& f, const char* what) {
    if (!all_finite(f.values)) throw NumericalError(std::string(what) + ": non-finite entry");
}
void require_finite(const RealField& f, const char* what) {
    if (!all_finite(f.values)) throw NumericalError(std::string(what) + ": non-finite entry");
}
void require_finite(const VectorField& f, const char* what) {
    for (const auto& c : f.components) require_finite(c, what);
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
    require_same_grid(grid, o.grid, "ComplexField +=");
    kernels::active().axpy(values.data(), 1.0, o.values.data(), values.size());
    return *this;
}
ComplexField& ComplexField::operator-=(const ComplexField& o) {
    require_same_grid(grid, o.grid, "ComplexField -=");
    kernels::active().axpy(values.data(), -1.0, o.values.data(), values.size());
    return *this;
}
ComplexField& ComplexField::operator*=(cplx c) {
    for (auto& v : values) v *= c;
    return *this;
}

RealField& RealField::operator+=(const RealField& o) {
    require_same_grid(grid, o.grid, "RealField +=");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}
RealField& RealField::operator-=(const RealField& o) {
    require_same_grid(grid, o.grid, "RealField -=");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}
RealField& RealField::operator*=(double c) {
    for (auto& v : values) v *= c;
    return *this;
}

VectorField& VectorField::operator+=(const VectorField& o) {
    require_same_grid(grid, o.grid, "VectorField +=");
    for (std::size_t j = 0; j < components.size(); ++j) components[j] += o.components[j];
    return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
    require_same_grid(grid, o.grid, "VectorField -=");
    for (std::size_t j = 0; j < components.size(); ++j) components[j] -= o.components[j];
    return *this;
}
VectorField& VectorField::operator*=(double c) {
    for (auto& comp : components) comp *= c;
    return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
ComplexField operator*(cplx c, ComplexField a) { return a *= c; }
RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double c, RealField a) { return a *= c; }
VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double c, VectorField a) { return a *= c; }

ComplexField to_complex(const RealField& f) {
    ComplexField out(f.grid);
    for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = f.values[i];
    return out;
}

RealField real_part(const ComplexField& f) {
    RealField out(f.grid);
    for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = f.values[i].real();
    return out;
}

RealField imag_part(const ComplexField& f) {
    RealField out(f.grid);
    for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = f.values[i].imag();
    return out;
}

RealField abs_squared(const ComplexField& f) {
    RealField out(f.grid);
    for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = std::norm(f.values[i]);
    return out;
}

ComplexField multiply_phase(const ComplexField& f, const RealField& phase) {
    require_same_grid(f.grid, phase.grid, "multiply_phase");
    ComplexField out(f.grid);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out.values[i] = f.values[i] * std::polar(1.0, phase.values[i]);
    return out;
}

RealField pointwise_norm(const VectorField& s) {
    RealField out(s.grid);
    for (const auto& c : s.components)
        for (std::size_t i = 0; i < c.values.size(); ++i) out.values[i] += c.values[i] * c.values[i];
    for (auto& v : out.values) v = std::sqrt(v);
    return out;
}

double node_coordinate(const GridSpec& g, std::size_t idx, int axis) {
    std::size_t stride = 1;
    for (int a = g.n - 1; a > axis; --a) stride *= static_cast<std::size_t>(g.points);
    const auto j = static_cast<int>((idx / stride) % static_cast<std::size_t>(g.points));
    return -g.half_width + j * g.spacing();
}

}  // namespace hwave
