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

#include "hwave/spectral/gaussian.hpp"

#include <cmath>

#include "hwave/core/error.hpp"

namespace hwave {

namespace {

// Principal branch; every combination below keeps the summed arguments in
// (-pi, pi), so products of these powers compose without branch jumps.
cplx pow_minus_half_n(cplx z, int n) { return std::pow(z, -0.5 * n); }

}  // namespace

GaussianSymbol gaussian_apply(const GaussianSymbol& g, GaussianOp op, double t) {
    if (!(g.a.real() > 0.0)) throw ParameterError("GaussianSymbol requires Re(a) > 0");
    GaussianSymbol out = g;
    switch (op) {
        case GaussianOp::F:
            out.amplitude = g.amplitude * pow_minus_half_n(g.a, g.n);
            out.a = 1.0 / g.a;
            break;
        case GaussianOp::M:
            if (t == 0.0) throw ParameterError("M(t) is undefined at t = 0");
            out.a = g.a - cplx(0.0, 1.0 / t);
            break;
        case GaussianOp::D:
            if (t == 0.0) throw ParameterError("D(t) is undefined at t = 0");
            out.amplitude = g.amplitude * pow_minus_half_n(cplx(0.0, t), g.n);
            out.a = g.a / (t * t);
            break;
        case GaussianOp::U: {
            const cplx q = 1.0 + cplx(0.0, t) * g.a;
            out.amplitude = g.amplitude * pow_minus_half_n(q, g.n);
            out.a = g.a / q;
            break;
        }
    }
    if (!(out.a.real() > 0.0)) throw ParameterError("GaussianSymbol result lost Re(a) > 0");
    return out;
}

ComplexField sample_gaussian(const GaussianSymbol& g, const GridSpec& grid,
                             const std::vector<double>& center) {
    if (g.n != grid.n) throw ParameterError("sample_gaussian: dimension mismatch");
    ComplexField f(grid);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        double r2 = 0.0;
        for (int a = 0; a < grid.n; ++a) {
            const double x = node_coordinate(grid, i, a) - (center.empty() ? 0.0 : center[a]);
            r2 += x * x;
        }
        f.values[i] = g.amplitude * std::exp(-0.5 * g.a * r2);
    }
    return f;
}

}  // namespace hwave
