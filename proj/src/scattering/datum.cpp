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

#include "hwave/scattering/datum.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hwave/core/error.hpp"
#include "hwave/spectral/gaussian.hpp"
#include "hwave/spectral/norms.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

namespace {

GaussianSymbol symbol(double amplitude, double width, int n) {
    return GaussianSymbol{cplx(amplitude, 0.0), cplx(1.0 / (width * width), 0.0), n};
}

}  // namespace

DatumChecks check_gaussian_datum(const GaussianDatumSpec& spec, const GridSpec& grid) {
    if (!(spec.width > 0.0)) throw ParameterError("datum: width must be > 0");
    if (!spec.center.empty() && static_cast<int>(spec.center.size()) != grid.n)
        throw ParameterError("datum: center must have n entries");
    DatumChecks c;
    c.full_width = 2.0 * std::sqrt(2.0) * spec.width;
    c.min_width = 4.0 * grid.spacing();
    c.width_ok = c.full_width >= c.min_width;
    if (!c.width_ok)
        c.messages.push_back(
            fmt::format("datum 1/e full width {:.4g} is below 4h = {:.4g}", c.full_width, c.min_width));

    const ComplexField w = sample_gaussian(symbol(1.0, spec.width, grid.n), grid, spec.center);
    const double R = grid.half_width / 2.0;
    double total = 0.0, outside = 0.0;
    for (std::size_t i = 0; i < w.values.size(); ++i) {
        double r2 = 0.0;
        for (int a = 0; a < grid.n; ++a) {
            const double x = node_coordinate(grid, i, a);
            r2 += x * x;
        }
        const double m = std::norm(w.values[i]);
        total += m;
        if (r2 > R * R) outside += m;
    }
    c.mass_outside = total > 0.0 ? outside / total : 0.0;
    c.mass_ok = c.mass_outside < 1e-10;
    if (!c.mass_ok)
        c.messages.push_back(
            fmt::format("datum mass fraction {:.3e} outside |x| <= L/2 exceeds 1e-10", c.mass_outside));
    return c;
}

AsymptoticDatum make_gaussian_datum(const GaussianDatumSpec& spec, const GridSpec& grid, const AdmissiblePair& pair) {
    grid.validate();
    check_gaussian_datum(spec, grid);
    ComplexField w = sample_gaussian(symbol(1.0, spec.width, grid.n), grid, spec.center);
    double amp = spec.amplitude;
    if (amp <= 0.0) {
        if (!(spec.norm_target >= 0.0)) throw ParameterError("datum: norm_target must be >= 0");
        const double nrm = sobolev_norm(w, pair.k + 1);
        amp = nrm > 0.0 ? spec.norm_target / nrm : 0.0;
    }
    w *= cplx(amp, 0.0);
    AsymptoticDatum d = AsymptoticDatum::from_w_plus(w);
    if (spec.phase_amplitude != 0.0) {
        if (!(spec.phase_width > 0.0)) throw ParameterError("datum: phase_width must be > 0");
        d.phi02_at_1 = project_band(real_part(sample_gaussian(symbol(spec.phase_amplitude, spec.phase_width, grid.n), grid)));
    }
    return d;
}

}  // namespace hwave
