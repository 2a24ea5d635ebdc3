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

#pragma once

#include <string>
#include <vector>

#include "hwave/core/aligned.hpp"
#include "hwave/spectral/grid.hpp"

namespace hwave {

struct ComplexField {
    GridSpec grid;
    CVec values;

    ComplexField() = default;
    explicit ComplexField(const GridSpec& g) : grid(g), values(g.size()) {}

    ComplexField& operator+=(const ComplexField& o);
    ComplexField& operator-=(const ComplexField& o);
    ComplexField& operator*=(cplx c);
};

struct RealField {
    GridSpec grid;
    RVec values;

    RealField() = default;
    explicit RealField(const GridSpec& g) : grid(g), values(g.size()) {}

    RealField& operator+=(const RealField& o);
    RealField& operator-=(const RealField& o);
    RealField& operator*=(double c);
};

struct VectorField {
    GridSpec grid;
    std::vector<RealField> components;

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : grid(g), components(g.n, RealField(g)) {}

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double c);
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(cplx c, ComplexField a);
RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double c, RealField a);
VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double c, VectorField a);

// Throws GridMismatch naming the operation when the grids differ.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

// Throws NumericalError if any entry is NaN or infinite.
void require_finite(const ComplexField& f, const char* what);
void require_finite(const RealField& f, const char* what);
void require_finite(const VectorField& f, const char* what);

ComplexField to_complex(const RealField& f);
RealField real_part(const ComplexField& f);
RealField imag_part(const ComplexField& f);
RealField abs_squared(const ComplexField& f);

// Pointwise helpers on the sampling grid (no de-aliasing; the callers that
// need band-limited products use the spectral engine).
ComplexField multiply_phase(const ComplexField& f, const RealField& phase);  // f e^{i phase}
RealField pointwise_norm(const VectorField& s);                              // |s(x)|

// Node coordinate along axis `axis` for flat index `idx`.
double node_coordinate(const GridSpec& g, std::size_t idx, int axis);

}  // namespace hwave
