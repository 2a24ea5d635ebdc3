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

#include <cmath>
#include <random>

#include "hwave/spectral/field.hpp"
#include "hwave/spectral/gaussian.hpp"
#include "hwave/spectral/norms.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave::test {

// Small arena for fast tests: 16^3 on [-8, 8)^3, h = 1.
inline GridSpec small_grid() { return GridSpec{3, 16, 8.0}; }

inline ComplexField gaussian(const GridSpec& g, double sigma, double norm_h3 = 0.0, cplx amp = {1.0, 0.0},
                             std::vector<double> center = {}) {
    ComplexField f = sample_gaussian(GaussianSymbol{amp, cplx(1.0 / (sigma * sigma), 0.0), g.n}, g, center);
    if (norm_h3 > 0.0) f *= cplx(norm_h3 / sobolev_norm(f, 3), 0.0);
    return project_band(f);
}

inline RealField real_gaussian(const GridSpec& g, double amp, double sigma) {
    return project_band(real_part(sample_gaussian(GaussianSymbol{cplx(amp, 0.0), cplx(1.0 / (sigma * sigma), 0.0), g.n}, g)));
}

inline double max_abs_diff(const ComplexField& a, const ComplexField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

inline double max_abs_diff(const RealField& a, const RealField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

inline double max_abs_diff(const VectorField& a, const VectorField& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.components.size(); ++j) m = std::max(m, max_abs_diff(a.components[j], b.components[j]));
    return m;
}

}  // namespace hwave::test
