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

#include "hwave/spectral/ops.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hwave/core/error.hpp"
#include "hwave/kernels/kernels.hpp"

namespace hwave {

namespace {

const SpectralEngine& engine_for(const GridSpec& g) { return *SpectralEngine::get(g); }

}  // namespace

CVec to_coefficients(const ComplexField& f) {
    CVec c = f.values;
    engine_for(f.grid).forward(c.data());
    return c;
}

CVec to_coefficients(const RealField& f) {
    CVec c(f.values.begin(), f.values.end());
    engine_for(f.grid).forward(c.data());
    return c;
}

ComplexField from_coefficients(const GridSpec& g, CVec coeffs) {
    engine_for(g).backward(coeffs.data());
    ComplexField out;
    out.grid = g;
    out.values = std::move(coeffs);
    return out;
}

RealField real_from_coefficients(const GridSpec& g, CVec coeffs) {
    engine_for(g).backward(coeffs.data());
    RealField out(g);
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.values[i] = coeffs[i].real();
    return out;
}

ComplexField apply_multiplier(const ComplexField& f, const Symbol& symbol) {
    const auto& e = engine_for(f.grid);
    const int n = f.grid.n;
    CVec c = to_coefficients(f);
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (int a = 0; a < n; ++a) xi[a] = e.xi(a)[i];
        const cplx m = symbol(xi);
        if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
            throw ParameterError("apply_multiplier: symbol is not finite on the frequency lattice");
        c[i] *= m;
    }
    return from_coefficients(f.grid, std::move(c));
}

ComplexField riesz_potential(const ComplexField& f, double mu) {
    const int n = f.grid.n;
    if (!(mu > 0.0 && mu < n))
        throw ParameterError("riesz_potential: mu must lie in (0, n), got " + std::to_string(mu));
    const auto& e = engine_for(f.grid);
    CVec c = to_coefficients(f);
    kernels::active().scale_real(c.data(), e.riesz_symbol(mu).data(), c.size());
    return from_coefficients(f.grid, std::move(c));
}

RealField riesz_potential(const RealField& f, double mu) {
    return real_part(riesz_potential(to_complex(f), mu));
}

ComplexField free_propagator(const ComplexField& f, double t) {
    CVec c = to_coefficients(f);
    engine_for(f.grid).apply_propagator(t, c.data());
    return from_coefficients(f.grid, std::move(c));
}

ComplexField partial(const ComplexField& f, int axis) {
    if (axis < 0 || axis >= f.grid.n) throw ParameterError("partial: axis out of range");
    const auto& e = engine_for(f.grid);
    CVec c = to_coefficients(f);
    const auto& k = e.xi(axis);
    const auto& band = e.band();
    // The Nyquist mode has no odd-symmetric partner, so its derivative is dropped.
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= cplx(0.0, k[i] * band[i]);
    return from_coefficients(f.grid, std::move(c));
}

RealField partial(const RealField& f, int axis) { return real_part(partial(to_complex(f), axis)); }

VectorField gradient(const RealField& f) {
    VectorField out(f.grid);
    for (int a = 0; a < f.grid.n; ++a) out.components[a] = partial(f, a);
    return out;
}

RealField divergence(const VectorField& s) {
    RealField out(s.grid);
    for (int a = 0; a < s.grid.n; ++a) out += partial(s.components[a], a);
    return out;
}

ComplexField laplacian(const ComplexField& f) {
    const auto& e = engine_for(f.grid);
    CVec c = to_coefficients(f);
    const auto& k2 = e.xi2();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= -k2[i];
    return from_coefficients(f.grid, std::move(c));
}

RealField laplacian(const RealField& f) { return real_part(laplacian(to_complex(f))); }

namespace {

ComplexField padded_product(const ComplexField& a, const ComplexField& b, bool conj_b) {
    require_same_grid(a.grid, b.grid, "dealiased_product");
    const auto& e = engine_for(a.grid);
    CVec ca = to_coefficients(a), cb = to_coefficients(b);
    CVec pa(e.padded_size()), pb(e.padded_size());
    e.to_padded(ca.data(), pa.data());
    e.to_padded(cb.data(), pb.data());
    const auto& k = kernels::active();
    if (conj_b)
        k.product_conj(pa.data(), pa.data(), pb.data(), pa.size());
    else
        k.product(pa.data(), pa.data(), pb.data(), pa.size());
    e.from_padded(pa.data(), ca.data());
    return from_coefficients(a.grid, std::move(ca));
}

}  // namespace

ComplexField dealiased_product(const ComplexField& a, const ComplexField& b) {
    return padded_product(a, b, false);
}

ComplexField dealiased_product_conj(const ComplexField& a, const ComplexField& b) {
    return padded_product(a, b, true);
}

ComplexField project_band(const ComplexField& f) {
    CVec c = to_coefficients(f);
    engine_for(f.grid).project(c.data());
    return from_coefficients(f.grid, std::move(c));
}

RealField project_band(const RealField& f) { return real_part(project_band(to_complex(f))); }

VectorField project_band(const VectorField& s) {
    VectorField out(s.grid);
    for (int a = 0; a < s.grid.n; ++a) out.components[a] = project_band(s.components[a]);
    return out;
}

}  // namespace hwave
