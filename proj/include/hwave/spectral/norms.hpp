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

#include <limits>
#include <map>
#include <vector>

#include "hwave/spectral/field.hpp"

namespace hwave {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// ||u; H^k|| = sum_{j<=k} sum_{|alpha|=j} ||d^alpha u||_2 (multi-index sum,
// not the Bessel norm). For vector fields each ||d^alpha s||_2 is the
// Euclidean combination over components.
double sobolev_norm(const ComplexField& f, int k);
double sobolev_norm(const RealField& f, int k);
double sobolev_norm(const VectorField& s, int k);

// || |xi|^s f^ ||_2 in physical normalization.
double homogeneous_norm(const ComplexField& f, double s);
double homogeneous_norm(const RealField& f, double s);
double homogeneous_norm(const VectorField& f, double s);

// Grid quadrature (h^n sum |f|^r)^{1/r}; r = kInfinity gives the grid max.
// Vector fields use the pointwise Euclidean magnitude.
double lr_norm(const ComplexField& f, double r);
double lr_norm(const RealField& f, double r);
double lr_norm(const VectorField& s, double r);

// L^{r0} + Hdot^{l0} + Hdot^{l+1} with l0 = [n/2], r0 = 2n (n odd) or
// infinity (n even).
struct XNormParts {
    double lr = 0.0;
    double hdot_low = 0.0;
    double hdot_high = 0.0;
    double total() const { return lr + hdot_low + hdot_high; }
};
XNormParts x_norm_parts(const VectorField& s, int ell);
double x_norm(const VectorField& s, int ell);

int x_norm_low_order(int n);
double x_norm_exponent(int n);

// ||(1 + |xi|^2)^{k/2} v^||_2
double galilei_norm(const ComplexField& v, int k);

// delta(r) = n/2 - n/r
double delta_r(int n, double r);

struct NormReport {
    std::vector<double> h_norms;     // H^j, j = 0..k_max
    std::vector<double> hdot_norms;  // Hdot^j, j = 0..k_max
    std::map<double, double> lr_norms;
    XNormParts x;                    // only for vector fields
};
NormReport norm_report(const ComplexField& f, int k_max, const std::vector<double>& rs);
NormReport norm_report(const VectorField& s, int k_max, int ell, const std::vector<double>& rs);

// Coefficient-level variants used by the integrator, which keeps its state
// spectral. `coeffs` follow the SpectralEngine convention.
double sobolev_norm_coeffs(const GridSpec& g, const CVec& coeffs, int k);
double sobolev_norm_coeffs(const GridSpec& g, const std::vector<CVec>& comps, int k);
double homogeneous_norm_coeffs(const GridSpec& g, const std::vector<CVec>& comps, double s);

}  // namespace hwave
