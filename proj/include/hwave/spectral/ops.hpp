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

#include <functional>
#include <span>

#include "hwave/spectral/engine.hpp"
#include "hwave/spectral/field.hpp"

namespace hwave {

// Symbol evaluated at a frequency vector xi (length n).
using Symbol = std::function<cplx(std::span<const double> xi)>;

// Nodal values <-> coefficients (see SpectralEngine for the convention).
CVec to_coefficients(const ComplexField& f);
CVec to_coefficients(const RealField& f);
ComplexField from_coefficients(const GridSpec& g, CVec coeffs);
RealField real_from_coefficients(const GridSpec& g, CVec coeffs);

// F^{-1}[symbol(xi) F f]. Throws ParameterError if the symbol is not finite
// somewhere on the lattice. Zero-mode handling is up to the symbol.
ComplexField apply_multiplier(const ComplexField& f, const Symbol& symbol);

// |xi|^{mu-n} with the zero mode removed; mu must lie in (0, n).
ComplexField riesz_potential(const ComplexField& f, double mu);
RealField riesz_potential(const RealField& f, double mu);

// U(t) = exp(i t Delta / 2), i.e. the multiplier exp(-i t |xi|^2 / 2).
ComplexField free_propagator(const ComplexField& f, double t);

VectorField gradient(const RealField& f);
RealField divergence(const VectorField& s);
ComplexField laplacian(const ComplexField& f);
RealField laplacian(const RealField& f);
// d_axis f
ComplexField partial(const ComplexField& f, int axis);
RealField partial(const RealField& f, int axis);

// Alias-free products of band-limited fields (inputs are first projected
// onto the band |m_i| < N/2): a*b and a*conj(b).
ComplexField dealiased_product(const ComplexField& a, const ComplexField& b);
ComplexField dealiased_product_conj(const ComplexField& a, const ComplexField& b);

// Removes the Nyquist planes.
ComplexField project_band(const ComplexField& f);
RealField project_band(const RealField& f);
VectorField project_band(const VectorField& s);

}  // namespace hwave
