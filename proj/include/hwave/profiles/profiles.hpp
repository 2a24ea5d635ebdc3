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
#include <vector>

#include "hwave/model/model.hpp"
#include "hwave/spectral/field.hpp"

namespace hwave {

// Scattering data: w_plus = F u_plus and the phase phi02 at t = 1.
struct AsymptoticDatum {
    ComplexField w_plus;
    RealField phi02_at_1;

    // phi02(1) = 0. w_plus is projected onto the resolved band (Nyquist
    // modes dropped) so that it is exactly representable by the solver.
    static AsymptoticDatum from_w_plus(const ComplexField& w_plus);
    VectorField s02_at_1() const;                                    // grad phi02(1)
    void validate() const;
};

struct QuadratureConfig {
    double tolerance = 1e-8;  // absolute, L^2 of the phase-type integral
    int max_doublings = 12;
    int max_tail_panels = 200;
};

// (t^{1-gamma} - 1) / (1 - gamma), evaluated without cancellation near t = 1.
double free_growth_factor(double t, double gamma);

VectorField s02_of_t(const AsymptoticDatum& d, double t, const ModelParams& p);
RealField phi02_of_t(const AsymptoticDatum& d, double t, const ModelParams& p);

// s0(t) = s0(1) + int_1^t tau^{-gamma} grad g0(U*(1/tau) w_plus) dtau, and
// phi0(t) = phi0(1) + the same integral of g0. Both come from one scalar
// quadrature, so grad phi0 = s0 holds to round-off.
VectorField s0_of_t(const AsymptoticDatum& d, const VectorField& s0_at_1, double t,
                    const ModelParams& p, const QuadratureConfig& q = {});
RealField phi0_of_t(const AsymptoticDatum& d, const RealField& phi0_at_1, double t,
                    const ModelParams& p, const QuadratureConfig& q = {});

struct TailResult {
    RealField value;          // -int_t^inf tau^{-gamma} (g0(U*(1/tau) w+) - g0(w+)) dtau
    double t_cut = 0.0;       // last panel edge
    double remainder = 0.0;   // L^2 size of the extrapolated piece beyond t_cut
    int panels = 0;
};

// The phase tail D(t) with phi0(t) = phi02(t) + D(t), s0(t) = s02(t) + grad D(t).
TailResult phase_tail(const AsymptoticDatum& d, double t, const ModelParams& p,
                      const QuadratureConfig& q = {});

// D at each of `times` (any order), sharing one tail evaluation at the
// largest time and integrating down between consecutive times.
std::vector<RealField> phase_tail_series(const AsymptoticDatum& d, const std::vector<double>& times,
                                         const ModelParams& p, const QuadratureConfig& q = {});

VectorField s0_minus_s02_tail(const AsymptoticDatum& d, double t, const ModelParams& p,
                              const QuadratureConfig& q = {});
RealField phi0_from_phi02(const AsymptoticDatum& d, double t, const ModelParams& p,
                          const QuadratureConfig& q = {});

// Geometric-panel Gauss-Legendre quadrature of a coefficient-valued
// integrand f(tau) over [a, b] (0 < a, either order). Exposed for reuse.
struct PanelRule {
    double ratio = 2.0;  // geometric panel ratio
};
CVec integrate_panels(const std::function<CVec(double)>& f, double a, double b, const PanelRule& rule);

}  // namespace hwave
