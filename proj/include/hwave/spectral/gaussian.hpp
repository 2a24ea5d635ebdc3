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

#include <vector>

#include "hwave/spectral/field.hpp"

namespace hwave {

// A exp(-a |x|^2 / 2) on R^n, Re a > 0. Closed under F, M(t), D(t), U(t),
// which makes it an exact oracle for operator identities.
struct GaussianSymbol {
    cplx amplitude{1.0, 0.0};
    cplx a{1.0, 0.0};
    int n = 3;
};

enum class GaussianOp {
    F,  // unitary Fourier transform
    M,  // multiplication by exp(i|x|^2 / 2t)
    D,  // (it)^{-n/2} f(x/t)
    U,  // exp(i t Delta / 2)
};

// Throws ParameterError for t = 0 with M or D, or if the result would lose
// Re a > 0.
GaussianSymbol gaussian_apply(const GaussianSymbol& g, GaussianOp op, double t = 1.0);

// Samples g at the grid nodes, centred at `center` (defaults to the origin).
ComplexField sample_gaussian(const GaussianSymbol& g, const GridSpec& grid,
                             const std::vector<double>& center = {});

}  // namespace hwave
